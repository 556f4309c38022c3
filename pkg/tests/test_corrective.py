import numpy as np
import pytest

from mcboost.coding import CodingMatrix, ColumnStream, one_vs_all
from mcboost.corrective import build_margin_column, cg_oracle, multiboost
from mcboost.data import from_arrays
from mcboost.errors import ConfigError
from mcboost.stagewise import adaboost_mo
from mcboost.weak import BinaryProblem, Stump, train_stump


def _toy(seed=0, n=30, C=3):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(loc=(2 * c, -c), scale=0.9, size=(n // C, 2))
                   for c in range(C)])
    y = np.repeat(np.arange(1, C + 1), n // C)
    return from_arrays(X, y)


class ConstantHypothesis:
    def __init__(self, value):
        self.value = value

    def predict(self, X):
        return np.full(np.atleast_2d(X).shape[0], self.value, dtype=np.int8)


def test_margin_column_fixed_code_all_agree():
    d = from_arrays(np.array([[0.0], [1.0]]), [1, 2])
    m = CodingMatrix(np.array([[1, 1], [-1, -1]]))
    # hypotheses that reproduce each example's code bit exactly
    h = [Stump(0, 0.5, -1), Stump(0, 0.5, -1)]
    col = build_margin_column("MO", h, m, d)
    assert np.array_equal(col, np.ones(4))


def test_margin_column_incremental_values():
    d = from_arrays(np.array([[0.0], [1.0]]), [1, 2])
    col_bits = np.array([1, -1], dtype=np.int8)
    # equal bits between own and wrong class give 0 regardless of h;
    # differing bits give +-2 with the prediction's sign
    h = ConstantHypothesis(-1)
    col = build_margin_column("ECC", h, col_bits, d)
    # rows: (example 1, class 2), (example 2, class 1)
    assert np.array_equal(col, np.array([-2.0, 2.0]))
    same_bits = np.array([1, 1], dtype=np.int8)
    col = build_margin_column("ECC", h, same_bits, d)
    assert np.array_equal(col, np.zeros(2))


def test_oracle_uniform_matches_stagewise_first_round():
    d = _toy(seed=1)
    m = one_vs_all(3)
    n, L = d.num_examples, m.code_length
    u = np.full(n * L, 1.0 / (n * L))
    hyps, _, _, _ = cg_oracle("MO", u, m, train_stump, d)
    ens, _ = adaboost_mo(d, m, train_stump, 1)
    assert hyps == ens.rounds[0]


def test_oracle_beats_enumeration_baseline():
    rng = np.random.default_rng(7)
    for _ in range(20):
        d = _toy(seed=int(rng.integers(1000)), n=12, C=3)
        u = rng.random(d.num_examples * 2) + 1e-3
        stream = ColumnStream(3, int(rng.integers(1000)))
        h, col, column, score = cg_oracle("ECC", u, stream, train_stump, d)
        # enumeration: every stump on the same drawn column
        best = -np.inf
        for f in range(d.num_features):
            for thr in np.unique(d.features[:, f]):
                for pol in (1, -1):
                    cand = Stump(f, thr - 1e-9, pol)
                    cand_col = build_margin_column("ECC", cand, col, d)
                    best = max(best, float(u @ cand_col))
        assert score >= best - 1e-9


def test_early_stop_on_separable_instance():
    # one stump classifies perfectly, so the round-1 column is all +1 and
    # the round-2 oracle cannot violate the dual constraint
    d = from_arrays(np.array([[0.0], [1.0], [2.0], [3.0]]), [1, 1, 2, 2])
    m = CodingMatrix(np.array([[-1], [1]]))
    ens, trace, dual = multiboost(d, "MO", m, train_stump, theta=2.0, T=50)
    assert ens.num_rounds == 1
    assert ens.w == pytest.approx([2.0])
    assert trace.train_error == [0.0]
    assert np.array_equal(dual.margin_matrix, np.ones((4, 1)))


def test_monotone_primal_and_dual_feasibility():
    d = _toy(seed=2)
    ens, _, dual = multiboost(d, "ECC", ColumnStream(3, 5), train_stump,
                              theta=6.0, T=40, force_full=True,
                              record_weights=True)
    logs = np.array(dual.log_primal)
    assert np.all(np.diff(logs) <= 1e-9)
    P = dual.margin_matrix
    for t, u in enumerate(dual.weight_history):
        assert np.max(u @ P[:, :t + 1]) <= dual.r[t] + 1e-9


def test_totally_corrective_not_worse_on_hard_toy():
    rng = np.random.default_rng(11)
    X = rng.normal(size=(90, 4))
    y = (np.argsort(X @ rng.normal(size=4)) // 15) % 6 + 1
    d = from_arrays(X, y)
    from mcboost.stagewise import adaboost_ecc
    stage_ens, stage_trace = adaboost_ecc(d, ColumnStream(6, 3), train_stump,
                                          50)
    theta = float(np.sum(stage_ens.w))
    _, tc_trace, _ = multiboost(d, "ECC", ColumnStream(6, 3), train_stump,
                                theta, T=50, force_full=True)
    assert tc_trace.train_error[-1] <= stage_trace.train_error[-1] + 1e-12


def test_hinge_variant_runs_and_matches_lp_shape():
    d = _toy(seed=9, n=15)
    ens, trace, dual = multiboost(d, "HINGE", ColumnStream(3, 2), train_stump,
                                  theta=4.0, T=6, force_full=True)
    assert ens.variant == "HINGE"
    assert len(dual.primal) == ens.num_rounds
    assert all(g == 0.0 for g in dual.gap)
    assert np.all(np.diff(dual.primal) <= 1e-9)


def test_determinism():
    d = _toy(seed=4)
    a, _, _ = multiboost(d, "ECC", ColumnStream(3, 8), train_stump, 5.0,
                         T=15, force_full=True)
    b, _, _ = multiboost(d, "ECC", ColumnStream(3, 8), train_stump, 5.0,
                         T=15, force_full=True)
    assert np.array_equal(a.w, b.w)
    assert np.array_equal(a.coding.entries, b.coding.entries)


def test_config_errors():
    d = _toy()
    with pytest.raises(ConfigError):
        multiboost(d, "XXX", one_vs_all(3), train_stump, 1.0)
    with pytest.raises(ConfigError):
        multiboost(d, "MO", one_vs_all(4), train_stump, 1.0)
    with pytest.raises(ConfigError):
        multiboost(d, "MO", one_vs_all(3), train_stump, -1.0)


def test_oracle_reports_weight_problems_with_round_index():
    d = _toy(seed=5)

    def failing_learner(problem: BinaryProblem):
        raise ConfigError("boom")

    with pytest.raises(ConfigError, match="round 1"):
        multiboost(d, "MO", one_vs_all(3), failing_learner, 1.0, T=3)
