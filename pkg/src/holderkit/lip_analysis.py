"""Exact Lipschitz / Hoelder seminorms, the maximal function and lattice ops.

Every pairwise scan walks rows in blocks so memory stays bounded for a few
thousand points, and ties resolve to the first pair in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, ShapeError
from .metric_core import FiniteMetricSpace, check_alpha

__all__ = [
    "SampledFunction", "SeminormReport", "LipschitzCheck", "lip_seminorm",
    "lip_norm", "is_l_lipschitz", "maximal_function", "pointwise_max",
    "pointwise_min", "family_sup", "family_inf",
]

_BLOCK_ENTRIES = 1 << 21


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Real or complex values attached to the points of a metric space."""

    space: FiniteMetricSpace
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values)
        if v.dtype.kind not in "fc":
            v = v.astype(float)
        if v.ndim != 1 or v.shape[0] != self.space.n:
            raise ShapeError(
                f"expected {self.space.n} values, got array of shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("function values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def is_complex(self) -> bool:
        return self.values.dtype.kind == "c"

    def with_values(self, values) -> "SampledFunction":
        return SampledFunction(self.space, values)

    def __len__(self):
        return self.values.shape[0]


class SeminormReport(NamedTuple):
    value: float
    witness_pair: tuple
    alpha: float


class LipschitzCheck(NamedTuple):
    ok: bool
    pair: tuple | None

    def __bool__(self):
        return self.ok


def _powered(dist, alpha):
    return dist if alpha == 1.0 else dist ** alpha


def _row_blocks(n):
    step = max(1, _BLOCK_ENTRIES // max(n, 1))
    for start in range(0, n, step):
        yield start, min(n, start + step)


def _ratio_block(values, denom, start, stop):
    diff = np.abs(values[start:stop, None] - values[None, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        r = diff / denom[start:stop]
    rows = np.arange(stop - start)
    r[rows, rows + start] = 0.0
    return r


def _max_ratio(values, denom):
    """First row-major maximiser of ``|v_i - v_j| / denom_ij`` (0 on diagonal)."""
    n = values.shape[0]
    best, best_pair = -1.0, (0, 0)
    for start, stop in _row_blocks(n):
        r = _ratio_block(values, denom, start, stop)
        k = int(np.argmax(r))
        val = float(r.flat[k])
        if val > best:
            best = val
            best_pair = (start + k // n, k % n)
    return best, best_pair


def lip_seminorm(f: SampledFunction, alpha=1.0) -> SeminormReport:
    """Exact ``sup |f(i) - f(j)| / d(i, j)**alpha`` over pairs ``i != j``.

    Complex values use the modulus. A constant function reports 0 with the
    sentinel witness ``(0, 0)``.
    """
    a = check_alpha(alpha)
    value, pair = _max_ratio(f.values, _powered(f.space.dist, a))
    if value == 0.0:
        pair = (0, 0)
    return SeminormReport(value, (int(pair[0]), int(pair[1])), a)


def lip_norm(f: SampledFunction, alpha=1.0) -> float:
    """Shorthand for ``lip_seminorm(f, alpha).value``."""
    return lip_seminorm(f, alpha).value


def is_l_lipschitz(f: SampledFunction, alpha, L, tolerance=0.0) -> LipschitzCheck:
    """Check ``|f(i) - f(j)| <= L * d(i, j)**alpha + tolerance`` for all pairs.

    The inequality is tested in quotient form, ``(|df| - tolerance) / d**alpha
    <= L``, so that ``L = lip_seminorm(f, alpha).value`` always passes with
    zero tolerance despite rounding.
    """
    a = check_alpha(alpha)
    L = float(L)
    tol = float(tolerance)
    if L < 0 or tol < 0:
        raise DomainError("L and tolerance must be nonnegative")
    denom = _powered(f.space.dist, a)
    n = f.space.n
    for start, stop in _row_blocks(n):
        diff = np.abs(f.values[start:stop, None] - f.values[None, :]) - tol
        with np.errstate(divide="ignore", invalid="ignore"):
            bad = diff / denom[start:stop] > L
        rows = np.arange(stop - start)
        bad[rows, rows + start] = False
        if bad.any():
            k = int(np.argmax(bad))
            return LipschitzCheck(False, (start + k // n, k % n))
    return LipschitzCheck(True, None)


def maximal_function(f: SampledFunction) -> SampledFunction:
    """``N(f)(x) = max_{y != x} |f(y) - f(x)| / d(y, x)``."""
    n = f.space.n
    if n < 2:
        raise DomainError("maximal function needs at least two points")
    out = np.empty(n)
    for start, stop in _row_blocks(n):
        out[start:stop] = _ratio_block(f.values, f.space.dist, start, stop).max(axis=1)
    return SampledFunction(f.space, out)


def _real_pair(f, g):
    if not f.space.same_as(g.space):
        raise ShapeError("functions live on different spaces")
    if f.is_complex or g.is_complex:
        raise DomainError("max/min are defined for real-valued functions only")


def pointwise_max(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    _real_pair(f, g)
    return SampledFunction(f.space, np.maximum(f.values, g.values))


def pointwise_min(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    _real_pair(f, g)
    return SampledFunction(f.space, np.minimum(f.values, g.values))


def _stack(fs: Sequence[SampledFunction]):
    fs = list(fs)
    if not fs:
        raise DomainError("family must be nonempty")
    for g in fs[1:]:
        _real_pair(fs[0], g)
    if fs[0].is_complex:
        raise DomainError("sup/inf are defined for real-valued functions only")
    return fs[0].space, np.vstack([g.values for g in fs])


def family_sup(fs: Sequence[SampledFunction]) -> SampledFunction:
    """Pointwise supremum of a finite nonempty family."""
    space, stack = _stack(fs)
    return SampledFunction(space, stack.max(axis=0))


def family_inf(fs: Sequence[SampledFunction]) -> SampledFunction:
    """Pointwise infimum of a finite nonempty family."""
    space, stack = _stack(fs)
    return SampledFunction(space, stack.min(axis=0))
