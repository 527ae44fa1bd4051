"""Random fixtures and brute-force oracles shared by the tests.

The oracles are deliberately naive: plain Python loops over every pair or
triple, with no reuse of library code beyond constructing inputs.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from holderkit import FiniteMetricSpace, SampledFunction


def random_metric(rng, n, kind=None):
    """A random valid metric on ``n`` points.

    ``kind`` is ``"euclid"`` (points in R^1..3), ``"graph"`` (shortest paths
    of a random complete weighted graph) or ``"ultra"`` (max-spanning
    ultrametric); random when omitted.
    """
    kind = kind or rng.choice(["euclid", "graph", "ultra"])
    if kind == "euclid":
        pts = rng.normal(size=(n, int(rng.integers(1, 4)))) * rng.uniform(0.1, 10)
        d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    elif kind == "graph":
        w = rng.uniform(0.05, 5.0, size=(n, n))
        d = np.minimum(w, w.T)
        np.fill_diagonal(d, 0.0)
        for k in range(n):
            d = np.minimum(d, d[:, k, None] + d[None, k, :])
    else:
        # ultrametric from random merge heights
        h = np.sort(rng.uniform(0.1, 3.0, size=max(n - 1, 1)))
        d = np.zeros((n, n))
        clusters = {i: [i] for i in range(n)}
        for height in h[: n - 1]:
            a, b = rng.choice(list(clusters), size=2, replace=False)
            for i in clusters[a]:
                for j in clusters[b]:
                    d[i, j] = d[j, i] = height
            clusters[a] += clusters.pop(b)
    return FiniteMetricSpace(d)


def random_function(rng, space, alpha=1.0, complex_=False):
    """Roughly Hoelder data: a random Lipschitz-ish profile plus noise."""
    anchor = int(rng.integers(space.n))
    base = rng.uniform(-3, 3) * space.dist[anchor] ** alpha
    vals = base + rng.normal(scale=rng.uniform(0.01, 2.0), size=space.n)
    if complex_:
        vals = vals + 1j * rng.normal(size=space.n)
    return SampledFunction(space, vals)


def oracle_seminorm(d, f, alpha):
    best = 0.0
    n = len(f)
    for i in range(n):
        for j in range(n):
            if i != j:
                best = max(best, abs(f[i] - f[j]) / d[i][j] ** alpha)
    return best


def oracle_triangle_ok(d, tol):
    n = len(d)
    return all(d[i][k] <= d[i][j] + d[j][k] + tol
               for i, j, k in itertools.product(range(n), repeat=3))


def oracle_a_l(d, f, L, alpha=1.0):
    n = len(f)
    return [min(f[w] + L * d[x][w] ** alpha for w in range(n)) for x in range(n)]


def oracle_maximal(d, f):
    n = len(f)
    return [max(abs(f[y] - f[x]) / d[x][y] for y in range(n) if y != x) for x in range(n)]


def oracle_smooth(d, mass, f, t):
    n = len(f)
    out = []
    for x in range(n):
        p = [max(0.0, 1.0 - d[x][y] / t) for y in range(n)]
        rho = sum(p[y] * mass[y] for y in range(n))
        out.append(sum(p[y] / rho * f[y] * mass[y] for y in range(n)))
    return out


def oracle_lacunary(coeffs, alpha, x):
    return sum(c * 2.0 ** (-n * alpha) * complex(math.cos(2.0 ** n * x), math.sin(2.0 ** n * x))
               for n, c in enumerate(coeffs))
