import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from momentreg import (Bag, BagDataset, BasisSpec, InputError, MomentVector, Normalization,
                       bag_moments, dataset_moments, distribution_moments,
                       point_state_moments)

from oracles import naive_moments

CHEB2 = BasisSpec("chebyshev", 2, (-1, 1))
CHEB3 = BasisSpec("chebyshev", 3, (-1, 1))


def test_single_observation():
    m = bag_moments(Bag([0.5], 7.0), CHEB3, "raw_sum")
    np.testing.assert_array_equal(m.values, [1.0, 0.5, -0.5])


def test_symmetric_pair():
    bag = Bag([-0.3, 0.3], 0.0)
    np.testing.assert_array_equal(bag_moments(bag, CHEB2, "raw_sum").values, [2.0, 0.0])
    np.testing.assert_array_equal(bag_moments(bag, CHEB2, "size_normalized").values, [1.0, 0.0])


def test_point_states():
    np.testing.assert_array_equal(
        point_state_moments(0.5, CHEB2, "raw_sum", 1000).values, [1000.0, 500.0])
    for n in (1, 17, 1e6):
        np.testing.assert_array_equal(
            point_state_moments(0.5, CHEB2, "size_normalized", n).values, [1.0, 0.5])
    np.testing.assert_allclose(
        point_state_moments(1.1, CHEB3, "size_normalized").values, [1.0, 1.1, 1.42],
        rtol=1e-15)


def test_invalid_inputs():
    with pytest.raises(InputError):
        Bag([], 1.0)
    with pytest.raises(InputError):
        Bag([0.1, float("nan")], 1.0)
    with pytest.raises(InputError):
        Bag([0.1], float("inf"))
    with pytest.raises(InputError):
        BagDataset(())
    with pytest.raises(InputError):
        point_state_moments(0.1, CHEB2, "raw_sum", 0)
    with pytest.raises(InputError):
        MomentVector([1.0, 2.0, 3.0], CHEB2)


@pytest.mark.parametrize("mode", list(Normalization))
def test_matches_naive_sum(rng, mode):
    spec = BasisSpec("legendre", 6, (-1.5, 1.5))
    obs = rng.uniform(-1.5, 1.5, 25)
    got = bag_moments(Bag(obs, 0.0), spec, mode).values
    ref = naive_moments(obs, "legendre", 6, spec.domain, mode is Normalization.SIZE_NORMALIZED)
    np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=30),
       st.lists(st.floats(-2, 2), min_size=1, max_size=30))
def test_linearity_of_raw_sums(a, b):
    spec = BasisSpec("chebyshev", 8, (-2, 2))
    whole = bag_moments(Bag(a + b, 0.0), spec, "raw_sum").values
    parts = bag_moments(Bag(a, 0.0), spec, "raw_sum").values \
        + bag_moments(Bag(b, 0.0), spec, "raw_sum").values
    np.testing.assert_allclose(whole, parts, rtol=1e-12, atol=1e-12 * np.abs(parts).max())


@settings(max_examples=100, deadline=None)
@given(st.floats(-1.5, 1.5), st.integers(1, 500))
def test_identical_observations_equal_point_state(x, n):
    spec = BasisSpec("chebyshev", 10, (-1.5, 1.5))
    bag = bag_moments(Bag([x] * n, 0.0), spec, "raw_sum").values
    point = point_state_moments(x, spec, "raw_sum", n).values
    assert bag.tobytes() == point.tobytes()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=2, max_size=50), st.randoms(use_true_random=False))
def test_permutation_invariance(obs, random):
    spec = BasisSpec("chebyshev", 12, (-1, 1))
    shuffled = list(obs)
    random.shuffle(shuffled)
    for mode in Normalization:
        a = bag_moments(Bag(obs, 0.0), spec, mode).values
        b = bag_moments(Bag(shuffled, 0.0), spec, mode).values
        assert a.tobytes() == b.tobytes()


def test_dataset_rows_equal_bag_moments(rng):
    spec = BasisSpec("chebyshev", 5, (-1.2, 1.2))
    bags = tuple(Bag(rng.uniform(-1.2, 1.2, rng.integers(1, 9)), 0.0) for _ in range(12))
    ds = BagDataset(bags)
    for mode in Normalization:
        rows = dataset_moments(ds, spec, mode)
        for row, bag in zip(rows, bags):
            assert row.tobytes() == bag_moments(bag, spec, mode).values.tobytes()


def test_distribution_moments_is_unlabeled_bag():
    spec = BasisSpec("legendre", 4, (-1, 1))
    sample = [0.1, -0.4, 0.9]
    assert distribution_moments(sample, spec) == bag_moments(Bag(sample, 3.0), spec)
