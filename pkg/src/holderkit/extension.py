"""Inf- and sup-formula extensions of Hoelder functions from a subset.

For ``f`` given on ``E`` with constant ``L`` of order ``alpha``::

    upper(x) = min_{w in E} f(w) + L d(x, w)**alpha
    lower(x) = max_{w in E} f(w) - L d(x, w)**alpha

Order ``alpha`` is handled by running the order-1 formulas on the snowflake
metric ``d**alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, PreconditionError, ShapeError
from .lip_analysis import SampledFunction, is_l_lipschitz, lip_seminorm
from .metric_core import FiniteMetricSpace, PointSubset, as_subset, check_alpha, snowflake

__all__ = ["AUTO", "ExtensionResult", "SandwichCheck", "extend", "random_competitor",
           "verify_sandwich"]

AUTO = "auto"


@dataclass(frozen=True, eq=False)
class ExtensionResult:
    upper: SampledFunction
    lower: SampledFunction
    L: float
    alpha: float
    subset: PointSubset
    f_on_subset: np.ndarray


class SandwichCheck(NamedTuple):
    ok: bool
    index: int | None


def _scale(values) -> float:
    return max(1.0, float(np.max(np.abs(values)))) if len(values) else 1.0


def extend(space: FiniteMetricSpace, subset, f_on_subset, alpha=1.0, L=AUTO,
           tolerance=None) -> ExtensionResult:
    """Extend real values on ``subset`` to all of ``space``.

    Parameters
    ----------
    space : FiniteMetricSpace
    subset : PointSubset or sequence of int
    f_on_subset : array_like
        One real value per subset index, in increasing index order.
    alpha : float, optional
        Hoelder order in (0, 1].
    L : float or ``"auto"``
        Constant to extend with. ``"auto"`` uses the exact seminorm of the
        data on the subset.
    tolerance : float, optional
        Slack when checking that the data is ``L``-Lipschitz on the subset.
        Defaults to ``1e-12`` times the data scale.

    Raises
    ------
    PreconditionError
        If the data is not ``L``-Lipschitz of order ``alpha`` on the subset;
        ``err.pair`` names the first violating pair of subset positions.
    """
    a = check_alpha(alpha)
    s = as_subset(subset, space.n)
    idx = np.asarray(s.indices)
    if np.iscomplexobj(f_on_subset):
        raise DomainError("extensions are defined for real-valued data")
    vals = np.asarray(f_on_subset, dtype=float)
    if vals.shape != (len(s),):
        raise ShapeError(f"expected {len(s)} subset values, got shape {vals.shape}")
    local = SampledFunction(space.restrict(s), vals)

    if isinstance(L, str):
        if L.lower() != AUTO:
            raise DomainError(f"L must be a nonnegative number or 'auto', got {L!r}")
        L = lip_seminorm(local, a).value
    else:
        L = float(L)
        if not np.isfinite(L) or L < 0:
            raise DomainError(f"L must be a nonnegative number, got {L!r}")
        tol = 1e-12 * _scale(vals) if tolerance is None else float(tolerance)
        check = is_l_lipschitz(local, a, L, tol)
        if not check.ok:
            i, j = check.pair
            raise PreconditionError(
                f"data is not {L}-Lipschitz of order {a} on the subset: points "
                f"{int(idx[i])} and {int(idx[j])} violate it", (int(idx[i]), int(idx[j])))

    d = snowflake(space, a).dist[:, idx]
    upper = (vals[None, :] + L * d).min(axis=1)
    lower = (vals[None, :] - L * d).max(axis=1)
    # the w = x term is the extremum on E; rounding in L*d can undercut it
    upper[idx] = vals
    lower[idx] = vals
    # lower <= upper holds exactly; where they coincide rounding can flip them
    np.minimum(lower, upper, out=lower)
    return ExtensionResult(SampledFunction(space, upper), SampledFunction(space, lower),
                           L, a, s, vals.copy())


def verify_sandwich(result: ExtensionResult, h: SampledFunction, tolerance=None) -> SandwichCheck:
    """Check ``lower - tol <= h <= upper + tol`` pointwise.

    ``h`` must agree with the extended data on the subset and be
    ``L``-Lipschitz of order ``alpha`` (both within ``tolerance``);
    otherwise :class:`PreconditionError` is raised, since such an ``h`` is
    not a competitor at all.
    """
    space = result.upper.space
    if not h.space.same_as(space):
        raise ShapeError("h lives on a different space")
    if h.is_complex:
        raise DomainError("h must be real-valued")
    tol = 1e-9 * _scale(h.values) if tolerance is None else float(tolerance)
    idx = np.asarray(result.subset.indices)
    gap = np.abs(h.values[idx] - result.f_on_subset)
    if np.any(gap > tol):
        k = int(np.argmax(gap > tol))
        raise PreconditionError(f"h differs from the data at point {int(idx[k])}")
    check = is_l_lipschitz(h, result.alpha, result.L, tol)
    if not check.ok:
        raise PreconditionError(
            f"h is not {result.L}-Lipschitz of order {result.alpha}", check.pair)
    bad = (h.values < result.lower.values - tol) | (h.values > result.upper.values + tol)
    if bad.any():
        return SandwichCheck(False, int(np.argmax(bad)))
    return SandwichCheck(True, None)


def random_competitor(result: ExtensionResult, rng: np.random.Generator,
                      tolerance=None) -> SampledFunction:
    """A random valid extension, for exercising :func:`verify_sandwich`.

    A convex combination of ``upper`` and ``lower`` is kept on a random
    superset of the subset and then re-extended, by the inf or sup formula
    at random, with the same ``L`` and ``alpha``.
    """
    space = result.upper.space
    mask = result.subset.mask(space.n) | (rng.random(space.n) < 0.5)
    idx = np.flatnonzero(mask)
    theta = rng.random()
    mix = theta * result.upper.values + (1.0 - theta) * result.lower.values
    tol = 1e-9 * _scale(mix) if tolerance is None else tolerance
    again = extend(space, idx, mix[idx], result.alpha, result.L, tol)
    return again.upper if rng.random() < 0.5 else again.lower
