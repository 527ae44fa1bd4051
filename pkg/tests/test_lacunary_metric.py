import numpy as np
import pytest

from holderkit import DomainError, FiniteMetricSpace, dist_to_set_all
from holderkit.lacunary import MetricLacunaryFamily, metric_lacunary_difference, split_bounds
from helpers import random_metric


def _cone_family(space, p, n_min, n_max, alpha):
    ns = np.arange(n_min, n_max + 1)
    d = dist_to_set_all(space, [p])
    betas = np.minimum(1.0, np.ldexp(1.0, ns)[:, None] * d[None, :])
    return MetricLacunaryFamily(space, betas, n_min, alpha)


def test_same_point_is_zero(rng):
    fam = _cone_family(random_metric(rng, 6), 0, -2, 4, 0.5)
    r = metric_lacunary_difference(fam, np.ones(7), 3, 3)
    assert r.value == 0 and r.best_bound == 0


def test_constants_cancel():
    s = FiniteMetricSpace.from_points([0.0, 1.0, 5.0])
    fam = MetricLacunaryFamily(s, np.ones((1, 3)), 0, 0.5)
    assert metric_lacunary_difference(fam, [4.0 - 2j], 0, 2).value == 0


def test_family_checks():
    s = FiniteMetricSpace.from_points([0.0, 1.0])
    with pytest.raises(DomainError):
        MetricLacunaryFamily(s, [[0.0, 2.0]], 0, 0.5)
    with pytest.raises(DomainError):
        MetricLacunaryFamily(s, [[0.0, 1.0]], -1, 0.5)  # slope 1 > 2**-1
    with pytest.raises(DomainError):
        MetricLacunaryFamily(s, [[0.0, 1.0]], 0, 1.0)


def test_cone_sum_within_split_bound(rng):
    space = random_metric(rng, 10)
    fam = _cone_family(space, 0, -5, 10, 0.5)
    coeffs = np.ones(16)
    for x in range(10):
        for y in range(10):
            r = metric_lacunary_difference(fam, coeffs, x, y)
            direct = sum(2.0 ** (-n * 0.5) * (fam.betas[k, x] - fam.betas[k, y])
                         for k, n in enumerate(range(-5, 11)))
            assert abs(r.value - direct) < 1e-12
            assert abs(r.value) <= r.best_bound * (1 + 1e-12)
            if x != y:
                assert r.best_bound == min(split_bounds(1.0, 0.5, space.dist[x, y], range(-5, 11)))
