import numpy as np
import pytest

from transcriptions import straight_fixed_code, straight_incremental_code

from mcboost.coding import ColumnStream, one_vs_all
from mcboost.data import from_arrays
from mcboost.errors import ConfigError
from mcboost.stagewise import (EPS_CLAMP, adaboost_ecc, adaboost_mo,
                               clamp_epsilon, mislabel_rows)
from mcboost.weak import train_stump


def _toy(seed=0, n=24, C=3):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(loc=(c, -c), scale=1.0, size=(n // C, 2))
                   for c in range(C)])
    y = np.repeat(np.arange(1, C + 1), n // C)
    return from_arrays(X, y)


def test_clamp_epsilon():
    assert clamp_epsilon(0.0) == EPS_CLAMP
    assert clamp_epsilon(1.0) == 1.0 - EPS_CLAMP
    assert clamp_epsilon(0.3) == 0.3


def test_fixed_code_matches_transcription_bitwise():
    d = _toy(seed=3)
    m = one_vs_all(3)
    _, trace = adaboost_mo(d, m, train_stump, 20, record_weights=True)
    eps_ref, omega_ref, u_ref = straight_fixed_code(
        d.features, d.labels, m.entries, train_stump, 20)
    assert trace.epsilon == eps_ref
    assert trace.omega == omega_ref
    for u_mine, u_theirs in zip(trace.weight_history, u_ref):
        ref_flat = u_theirs.flatten() / np.sum(u_theirs)
        assert np.array_equal(u_mine, ref_flat)


def test_incremental_code_matches_transcription_bitwise():
    d = _toy(seed=4)
    _, trace = adaboost_ecc(d, ColumnStream(3, 99), train_stump, 20,
                            record_weights=True)
    eps_ref, omega_ref, u_ref = straight_incremental_code(
        d.features, d.labels, ColumnStream(3, 99), train_stump, 20)
    assert trace.epsilon == eps_ref
    assert trace.omega == omega_ref
    for u_mine, u_theirs in zip(trace.weight_history, u_ref):
        ref_flat = mislabel_rows(u_theirs, d.labels) / np.sum(u_theirs)
        assert np.array_equal(u_mine, ref_flat)


def test_incremental_true_class_weight_stays_zero():
    d = _toy(seed=5)
    _, trace = adaboost_ecc(d, ColumnStream(3, 1), train_stump, 10,
                            record_weights=True)
    # recorded weights exclude the true-class slots entirely, so their
    # count is N * (C - 1)
    for u in trace.weight_history:
        assert u.shape == (d.num_examples * 2,)
        assert np.all(u >= 0)
        assert np.isclose(np.sum(u), 1.0)


def test_training_error_decreases_on_easy_data():
    d = _toy(seed=6)
    _, trace_mo = adaboost_mo(d, one_vs_all(3), train_stump, 30)
    assert trace_mo.train_error[-1] <= trace_mo.train_error[0]
    assert trace_mo.train_error[-1] <= 0.1
    _, trace_ecc = adaboost_ecc(d, ColumnStream(3, 2), train_stump, 30)
    assert trace_ecc.train_error[-1] <= 0.1


def test_omega_formula_on_crafted_round():
    # single feature, one stump errs on exactly one of four examples
    d = from_arrays(np.array([[0.0], [1.0], [2.0], [3.0]]), [1, 1, 2, 2])
    m = one_vs_all(2)
    _, trace = adaboost_mo(d, m, train_stump, 1)
    eps = trace.epsilon[0]
    assert trace.omega[0] == pytest.approx(0.5 * np.log((1 - eps) / eps))


def test_config_errors():
    d = _toy()
    with pytest.raises(ConfigError):
        adaboost_mo(d, one_vs_all(4), train_stump, 5)
    with pytest.raises(ConfigError):
        adaboost_mo(d, one_vs_all(3), train_stump, 0)
    with pytest.raises(ConfigError):
        adaboost_ecc(d, ColumnStream(4, 0), train_stump, 5)


def test_test_error_tracking():
    train = _toy(seed=7)
    test = _toy(seed=8)
    _, trace = adaboost_mo(train, one_vs_all(3), train_stump, 5, test=test)
    assert len(trace.test_error) == 5
    assert all(0.0 <= e <= 1.0 for e in trace.test_error)
