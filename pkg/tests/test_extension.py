import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holderkit import (AUTO, DomainError, FiniteMetricSpace, PreconditionError, SampledFunction,
                       extend, is_l_lipschitz, verify_sandwich)
from holderkit.extension import random_competitor
from helpers import random_function, random_metric


@pytest.fixture
def line3():
    return FiniteMetricSpace.from_points([0.0, 1.0, 2.0])


def _oracle_extension(d, idx, vals, L, alpha):
    n = len(d)
    up = [min(vals[k] + L * d[x][w] ** alpha for k, w in enumerate(idx)) for x in range(n)]
    lo = [max(vals[k] - L * d[x][w] ** alpha for k, w in enumerate(idx)) for x in range(n)]
    return np.array(up), np.array(lo)


def test_full_subset_reproduces_f(rng):
    s = random_metric(rng, 12)
    f = random_function(rng, s)
    res = extend(s, range(s.n), f.values)
    assert np.array_equal(res.upper.values, f.values)
    assert np.array_equal(res.lower.values, f.values)


def test_line_examples(line3):
    res = extend(line3, [0, 2], [0.0, 2.0], 1.0, 1.0)
    assert res.upper.values[1] == 1.0 and res.lower.values[1] == 1.0
    res = extend(line3, [0, 2], [0.0, 0.0], 1.0, 1.0)
    assert res.upper.values[1] == 1.0 and res.lower.values[1] == -1.0


def test_auto_uses_subset_seminorm(line3):
    res = extend(line3, [0, 2], [0.0, 2.0], 0.5, AUTO)
    assert res.L == pytest.approx(2.0 / 2.0 ** 0.5)


def test_violating_data_names_pair(line3):
    with pytest.raises(PreconditionError) as info:
        extend(line3, [0, 2], [0.0, 5.0], 1.0, 1.0)
    assert info.value.pair == (0, 2)


def test_bad_inputs(line3):
    with pytest.raises(DomainError):
        extend(line3, [0], [1j])
    with pytest.raises(DomainError):
        extend(line3, [0], [1.0], L=-1.0)
    with pytest.raises(DomainError):
        extend(line3, [0], [1.0], L="biggest")
    with pytest.raises(ValueError):
        extend(line3, [0, 1], [1.0])


def test_sandwich_examples(line3):
    res = extend(line3, [0, 2], [0.0, 0.0], 1.0, 1.0)
    assert verify_sandwich(res, res.upper).ok
    assert verify_sandwich(res, res.lower).ok
    mid = SampledFunction(line3, (res.upper.values + res.lower.values) / 2)
    assert is_l_lipschitz(mid, 1.0, 1.0).ok
    assert verify_sandwich(res, mid).ok


def test_sandwich_rejects_non_competitors(line3):
    res = extend(line3, [0, 2], [0.0, 0.0], 1.0, 1.0)
    with pytest.raises(PreconditionError):
        verify_sandwich(res, SampledFunction(line3, [1.0, 1.0, 1.0]))
    with pytest.raises(PreconditionError):
        verify_sandwich(res, SampledFunction(line3, [0.0, 3.0, 0.0]))


def test_random_competitors_stay_inside(rng):
    s = random_metric(rng, 25)
    f = random_function(rng, s, 0.5)
    res = extend(s, [1, 4, 9], f.values[[1, 4, 9]], 0.5)
    for _ in range(20):
        h = random_competitor(res, rng)
        assert verify_sandwich(res, h).ok


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 16), alpha=st.floats(0.1, 1.0))
def test_extension_matches_oracle(seed, n, alpha):
    rng = np.random.default_rng(seed)
    s = random_metric(rng, n) if n > 1 else FiniteMetricSpace([[0.0]])
    f = random_function(rng, s, alpha)
    idx = sorted(set(rng.integers(0, n, size=int(rng.integers(1, n + 1))).tolist()))
    res = extend(s, idx, f.values[idx], alpha)
    up, lo = _oracle_extension(s.dist, idx, f.values[idx], res.L, alpha)
    up[idx] = lo[idx] = f.values[idx]
    np.testing.assert_allclose(res.upper.values, up, rtol=0, atol=1e-12 * (1 + np.abs(up).max()))
    np.testing.assert_allclose(res.lower.values, lo, rtol=0, atol=1e-12 * (1 + np.abs(lo).max()))
    assert np.all(res.lower.values <= res.upper.values)


def test_order_survives_rounding_at_exact_seminorm():
    # these endpoints make upper and lower coincide, and they used to round out of order
    s = FiniteMetricSpace.from_points(np.linspace(0.0, 1.0, 12))
    res = extend(s, [0, 11], [0.0, 1.0])
    assert np.all(res.lower.values <= res.upper.values)
    np.testing.assert_allclose(res.upper.values, np.linspace(0.0, 1.0, 12), atol=1e-15)
