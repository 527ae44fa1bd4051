import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holderkit import (DomainError, FiniteMetricSpace, MeasureWeights, SampledFunction, ShapeError,
                       approximation_certificate, build_kernel, doubling_constant,
                       lipschitz_improvement_certificate, smooth)
from holderkit.smoothing import improvement_scan, kernel_lipschitz_certificate
from helpers import oracle_smooth, random_function, random_metric


@pytest.fixture
def pair():
    return FiniteMetricSpace([[0, 1], [1, 0]])


def _line(n=64):
    x = np.linspace(0.0, 1.0, n)
    return x, FiniteMetricSpace.from_points(x)


def _oracle_doubling(d, mass):
    """Ratio over every center and every radius that is a distance or half of one."""
    n = len(d)
    radii = sorted({d[i][j] * k for i in range(n) for j in range(n) if i != j for k in (1.0, 0.5)})
    best = 1.0
    for x in range(n):
        for r in radii:
            r = r * (1 + 1e-9)
            inner = sum(mass[y] for y in range(n) if d[x][y] < r)
            outer = sum(mass[y] for y in range(n) if d[x][y] < 2 * r)
            best = max(best, outer / inner)
    return best


def test_measure_validation():
    with pytest.raises(DomainError):
        MeasureWeights([1.0, 0.0])
    with pytest.raises(ShapeError):
        MeasureWeights([])
    with pytest.raises(ShapeError):
        MeasureWeights.uniform(3).check(FiniteMetricSpace([[0, 1], [1, 0]]))


def test_doubling_examples():
    assert doubling_constant(FiniteMetricSpace([[0.0]]), MeasureWeights.uniform(1)).constant == 1.0
    s = FiniteMetricSpace.from_points([0.0, 1.0, 2.0])
    assert doubling_constant(s, MeasureWeights.uniform(3)).constant == 3.0
    _, line = _line()
    assert doubling_constant(line, MeasureWeights.uniform(64)).constant <= 4.0


def test_doubling_matches_oracle(rng):
    for _ in range(5):
        s = random_metric(rng, 9)
        mu = MeasureWeights(rng.uniform(0.1, 2.0, size=9))
        assert doubling_constant(s, mu).constant == pytest.approx(_oracle_doubling(s.dist, mu.mass))


def test_two_point_kernel(pair):
    mu = MeasureWeights.uniform(2)
    k = build_kernel(pair, mu, 2.0)
    assert k.p[0, 1] == 0.5
    assert k.rho.tolist() == [1.5, 1.5]
    np.testing.assert_allclose(k.phi, [[2 / 3, 1 / 3], [1 / 3, 2 / 3]], rtol=1e-15)
    out = smooth(SampledFunction(pair, [0.0, 1.0]), k, mu).values
    np.testing.assert_allclose(out, [1 / 3, 2 / 3], rtol=1e-15)


def test_small_t_is_identity(rng):
    s = random_metric(rng, 10)
    mu = MeasureWeights(rng.uniform(0.5, 2, size=10))
    t = 0.5 * s.dist[~np.eye(10, dtype=bool)].min()
    f = random_function(rng, s)
    k = build_kernel(s, mu, t)
    assert np.array_equal(k.p, np.eye(10))
    assert np.array_equal(smooth(f, k, mu).values, f.values)
    cert, K = lipschitz_improvement_certificate(f, 1.0, k, mu)
    assert np.isfinite(K) and cert.passed


def test_constant_preserved(rng):
    s = random_metric(rng, 12)
    mu = MeasureWeights(rng.uniform(0.1, 3, size=12))
    f = SampledFunction(s, np.full(12, 0.1))
    for t in (0.3, 1.0, 5.0):
        k = build_kernel(s, mu, t)
        assert np.all(smooth(f, k, mu).values == 0.1)
        assert approximation_certificate(f, 0.5, k, mu).lhs == 0.0
        assert lipschitz_improvement_certificate(f, 0.5, k, mu)[1] == 0.0


def test_approximation_examples(pair):
    x, line = _line()
    mu = MeasureWeights.uniform(64)
    cert = approximation_certificate(SampledFunction(line, x), 1.0, build_kernel(line, mu, 0.1), mu)
    assert cert.passed and cert.lhs <= 0.1
    two = approximation_certificate(SampledFunction(pair, [0.0, 1.0]), 1.0,
                                    build_kernel(pair, MeasureWeights.uniform(2), 2.0),
                                    MeasureWeights.uniform(2))
    assert two.lhs == pytest.approx(1 / 3) and two.rhs == 2.0


def test_bad_t(pair):
    with pytest.raises(DomainError):
        build_kernel(pair, MeasureWeights.uniform(2), 0.0)


def test_kernel_triple_scan():
    _, line = _line()
    mu = MeasureWeights.uniform(64)
    for t in (0.03, 0.25, 1.0):
        k = build_kernel(line, mu, t)
        assert kernel_lipschitz_certificate(line, k).passed
        n = line.n
        for x in range(0, n, 7):
            for z in range(n):
                assert np.all(np.abs(k.p[x] - k.p[z]) <= line.dist[x, z] / t + 1e-12)


def test_improvement_scan_flat():
    x, line = _line()
    scan = improvement_scan(SampledFunction(line, np.sqrt(x)), 0.5, MeasureWeights.uniform(64),
                            2.0 ** -np.arange(1, 9))
    assert abs(scan.slope) <= 0.1
    assert np.all(np.isfinite(scan.constants))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 14), t=st.floats(0.05, 10.0),
       alpha=st.floats(0.1, 1.0))
def test_smoothing_matches_oracle(seed, n, t, alpha):
    rng = np.random.default_rng(seed)
    s = random_metric(rng, n)
    mu = MeasureWeights(rng.uniform(0.1, 5.0, size=n))
    f = random_function(rng, s, alpha)
    k = build_kernel(s, mu, t)
    np.testing.assert_allclose(k.phi @ mu.mass, 1.0, rtol=1e-12)
    np.testing.assert_allclose(smooth(f, k, mu).values, oracle_smooth(s.dist, mu.mass, f.values, t),
                               rtol=1e-10, atol=1e-10)
    assert approximation_certificate(f, alpha, k, mu).passed
    assert lipschitz_improvement_certificate(f, alpha, k, mu)[0].passed
