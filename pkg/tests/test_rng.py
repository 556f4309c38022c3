import numpy as np

from mcboost.rng import Rng, derive_seed


def test_same_seed_same_stream():
    a = Rng(12345)
    b = Rng(12345)
    assert [a.u64() for _ in range(50)] == [b.u64() for _ in range(50)]


def test_different_seeds_differ():
    a = Rng(1)
    b = Rng(2)
    assert [a.u64() for _ in range(10)] != [b.u64() for _ in range(10)]


def test_derive_seed_distinct_and_stable():
    seeds = [derive_seed(7, i) for i in range(100)]
    assert len(set(seeds)) == 100
    assert seeds == [derive_seed(7, i) for i in range(100)]
    assert derive_seed(7, 0) != derive_seed(8, 0)


def test_random_unit_interval():
    rng = Rng(9)
    vals = [rng.random() for _ in range(2000)]
    assert all(0.0 <= v < 1.0 for v in vals)
    assert 0.4 < np.mean(vals) < 0.6


def test_randrange_bounds():
    rng = Rng(3)
    vals = [rng.randrange(7) for _ in range(2000)]
    assert set(vals) == set(range(7))


def test_sign_balanced():
    rng = Rng(11)
    vals = [rng.sign() for _ in range(2000)]
    assert set(vals) == {-1, 1}
    assert abs(np.mean(vals)) < 0.1


def test_shuffle_is_permutation_and_deterministic():
    items = list(range(20))
    a = items.copy()
    Rng(5).shuffle(a)
    assert sorted(a) == items
    assert a != items
    b = items.copy()
    Rng(5).shuffle(b)
    assert a == b
