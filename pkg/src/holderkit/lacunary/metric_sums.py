"""Sums ``sum_n a_n 2**(-n alpha) beta_n`` over a window of integers ``n``.

The full sum over all integers need not converge, but its differences
``f(x) - f(y)`` do; the split-index bounds below control the part of the
difference outside any finite window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..errors import DomainError, ShapeError
from ..lip_analysis import SampledFunction, lip_norm
from ..metric_core import FiniteMetricSpace, check_alpha

__all__ = ["MetricLacunaryFamily", "MetricDifference", "split_bounds",
           "metric_lacunary_difference"]


@dataclass(frozen=True, eq=False)
class MetricLacunaryFamily:
    """``betas[k]`` holds ``beta_n`` for ``n = n_min + k``.

    On construction every ``beta_n`` is checked for ``sup |beta_n| <= 1`` and
    ``|beta_n|_Lip <= 2**n`` (relative slack ``1e-12``).
    """

    space: FiniteMetricSpace
    betas: np.ndarray
    n_min: int
    alpha: float

    def __post_init__(self):
        a = check_alpha(self.alpha, strict_upper=True)
        object.__setattr__(self, "alpha", a)
        b = np.array(self.betas, dtype=complex)
        if b.ndim != 2 or b.shape[1] != self.space.n or b.shape[0] < 1:
            raise ShapeError(f"betas must have shape (window, {self.space.n}), got {b.shape}")
        for k, row in enumerate(b):
            n = self.n_min + k
            if np.max(np.abs(row)) > 1.0 + 1e-12:
                raise DomainError(f"beta_{n} exceeds 1 in modulus")
            if self.space.n > 1:
                lip = lip_norm(SampledFunction(self.space, row), 1.0)
                if lip > 2.0 ** n * (1.0 + 1e-12):
                    raise DomainError(f"beta_{n} has Lipschitz seminorm {lip} > 2**{n}")
        b.setflags(write=False)
        object.__setattr__(self, "betas", b)
        object.__setattr__(self, "n_min", int(self.n_min))

    @property
    def window(self) -> np.ndarray:
        return self.n_min + np.arange(self.betas.shape[0])


class MetricDifference(NamedTuple):
    value: complex
    split_indices: np.ndarray
    bounds: np.ndarray
    best_k: int | None
    best_bound: float


def split_bounds(A, alpha, d, ks) -> np.ndarray:
    """``2 A (1-2**-a)**-1 2**(-k a) + A 2**((k-1)(1-a)) (1-2**-(1-a))**-1 d``.

    The first term covers ``n >= k`` at both points, the second ``n < k``.
    """
    ks = np.asarray(ks, dtype=float)
    a, b = alpha, 1.0 - alpha
    return (2.0 * A / (1.0 - 2.0 ** -a) * 2.0 ** (-ks * a)
            + A * 2.0 ** ((ks - 1.0) * b) / (1.0 - 2.0 ** -b) * d)


def metric_lacunary_difference(family: MetricLacunaryFamily, coeffs, x: int, y: int) -> MetricDifference:
    """Windowed ``sum_n a_n 2**(-n alpha) (beta_n(x) - beta_n(y))`` with bounds.

    ``bounds[k]`` is the split bound at ``split_indices[k]``; the smallest is
    reported as ``best_bound``. For ``x == y`` everything is zero.
    """
    c = np.asarray(coeffs, dtype=complex).reshape(-1)
    window = family.window
    if c.shape != window.shape:
        raise ShapeError(f"expected {window.size} coefficients, got {c.size}")
    x, y = int(x), int(y)
    n = family.space.n
    if not (0 <= x < n and 0 <= y < n):
        raise DomainError("points out of range")
    if x == y:
        return MetricDifference(0j, window.copy(), np.zeros(window.size), None, 0.0)
    weights = c * 2.0 ** (-window * family.alpha)
    value = complex(np.sum(weights * (family.betas[:, x] - family.betas[:, y])))
    A = float(np.max(np.abs(c)))
    bounds = split_bounds(A, family.alpha, family.space.dist[x, y], window)
    k = int(np.argmin(bounds))
    return MetricDifference(value, window.copy(), bounds, int(window[k]), float(bounds[k]))
