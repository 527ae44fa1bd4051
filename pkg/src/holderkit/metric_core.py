"""Finite metric spaces, metric-axiom checks, snowflakes and distance to a set.

Distances are stored as a dense ``n x n`` float matrix. Points are plain
integer indices; coordinates appear only in the convenience builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, MetricError, ShapeError

__all__ = [
    "FiniteMetricSpace", "PointSubset", "Violation", "check_alpha",
    "default_tolerance", "validate_metric", "snowflake", "dist_to_set",
    "dist_to_set_all", "as_subset",
]

#: Relative slack for metric-axiom checks, multiplied by the largest entry.
METRIC_RTOL = 1e-9


def check_alpha(alpha, *, strict_upper=False, name="alpha") -> float:
    """Return ``alpha`` as a float after checking ``0 < alpha <= 1``.

    With ``strict_upper=True`` the value 1 is rejected as well.
    """
    try:
        a = float(alpha)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {alpha!r}")
    if not np.isfinite(a) or a <= 0.0 or a > 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {alpha!r}")
    if strict_upper and a == 1.0:
        raise DomainError(f"{name} must lie in (0, 1) here, got 1")
    return a


def default_tolerance(dist) -> float:
    dist = np.asarray(dist, dtype=float)
    if dist.size == 0:
        return 0.0
    finite = dist[np.isfinite(dist)]
    scale = float(np.max(np.abs(finite))) if finite.size else 0.0
    return METRIC_RTOL * scale


class Violation(NamedTuple):
    """One failed metric axiom.

    ``kind`` is one of ``"finite"``, ``"diagonal"``, ``"positivity"``,
    ``"symmetry"`` or ``"triangle"``. For ``"triangle"`` the indices
    ``(i, j, k)`` mean ``dist[i][k] > dist[i][j] + dist[j][k]``; ``excess``
    is the amount by which the inequality fails.
    """

    kind: str
    indices: tuple
    excess: float


def validate_metric(dist, tolerance=None) -> list[Violation]:
    """List every metric-axiom violation of a square distance matrix.

    Parameters
    ----------
    dist : array_like, shape (n, n)
        Candidate distance matrix.
    tolerance : float, optional
        Absolute slack for the diagonal, symmetry and triangle checks.
        Defaults to ``1e-9`` times the largest entry. Positivity of
        off-diagonal entries is checked strictly.

    Returns
    -------
    violations : list of Violation
        Sorted by kind then indices; empty exactly when ``dist`` is a metric.
    """
    d = np.asarray(dist, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ShapeError(f"distance matrix must be square, got shape {d.shape}")
    tol = default_tolerance(d) if tolerance is None else float(tolerance)
    if tol < 0:
        raise DomainError("tolerance must be nonnegative")
    n = d.shape[0]
    out: list[Violation] = []

    bad = np.argwhere(~np.isfinite(d))
    if bad.size:
        # the remaining checks are meaningless with NaN/inf entries
        return [Violation("finite", (int(i), int(j)), float("nan")) for i, j in bad]

    diag = np.abs(np.diag(d))
    for i in np.flatnonzero(diag > tol):
        out.append(Violation("diagonal", (int(i),), float(diag[i])))

    off = ~np.eye(n, dtype=bool)
    for i, j in np.argwhere(off & (d <= 0.0)):
        out.append(Violation("positivity", (int(i), int(j)), float(-d[i, j])))

    asym = np.abs(d - d.T)
    for i, j in np.argwhere(np.triu(asym > tol, 1)):
        out.append(Violation("symmetry", (int(i), int(j)), float(asym[i, j])))

    for j in range(n):
        excess = d - (d[:, j][:, None] + d[j, :][None, :])
        excess[j, :] = -np.inf
        excess[:, j] = -np.inf
        for i, k in np.argwhere(excess > tol):
            out.append(Violation("triangle", (int(i), j, int(k)), float(excess[i, k])))

    order = {"diagonal": 0, "positivity": 1, "symmetry": 2, "triangle": 3}
    out.sort(key=lambda v: (order[v.kind], v.indices))
    return out


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """``n`` anonymous points with a dense symmetric distance matrix.

    The matrix is copied and made read-only. Construction runs
    :func:`validate_metric` unless ``validate=False``.
    """

    dist: np.ndarray
    validate: bool = True

    def __post_init__(self):
        d = np.array(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ShapeError(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] < 1:
            raise ShapeError("a metric space needs at least one point")
        if self.validate:
            violations = validate_metric(d)
            if violations:
                raise MetricError(
                    f"{len(violations)} metric axiom violation(s); first: {violations[0]}",
                    violations)
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def scale(self) -> float:
        """Largest pairwise distance (0 for a single point)."""
        return float(self.dist.max())

    @classmethod
    def from_points(cls, points, validate=False) -> "FiniteMetricSpace":
        """Euclidean distances between rows of ``points`` (1-D input = line)."""
        p = np.asarray(points, dtype=float)
        if p.ndim == 1:
            p = p[:, None]
        if p.ndim != 2:
            raise ShapeError("points must be a 1-D or 2-D array")
        if p.shape[1] == 1:
            d = np.abs(p - p.T)
        else:
            diff = p[:, None, :] - p[None, :, :]
            d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        if validate:
            return cls(d)
        # distinct points give a metric; only positivity can fail
        off = ~np.eye(len(p), dtype=bool)
        if np.any(d[off] <= 0.0):
            i, j = np.argwhere(off & (d <= 0.0))[0]
            raise MetricError(f"points {i} and {j} coincide",
                              [Violation("positivity", (int(i), int(j)), 0.0)])
        return cls(d, validate=False)

    def same_as(self, other: "FiniteMetricSpace") -> bool:
        return self is other or (self.n == other.n and np.array_equal(self.dist, other.dist))

    def restrict(self, subset) -> "FiniteMetricSpace":
        idx = np.asarray(as_subset(subset, self.n).indices)
        return FiniteMetricSpace(self.dist[np.ix_(idx, idx)], validate=False)


@dataclass(frozen=True)
class PointSubset:
    """Nonempty strictly increasing tuple of point indices."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise DomainError("subset must be nonempty")
        if idx[0] < 0 or any(b <= a for a, b in zip(idx, idx[1:])):
            raise DomainError("subset indices must be nonnegative and strictly increasing")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i):
        return int(i) in set(self.indices)

    def check(self, n: int) -> "PointSubset":
        if self.indices[-1] >= n:
            raise DomainError(f"subset index {self.indices[-1]} out of range for {n} points")
        return self

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[list(self.check(n).indices)] = True
        return m


def as_subset(subset, n: int) -> PointSubset:
    """Coerce ``subset`` (PointSubset or iterable of ints) and bounds-check it.

    Plain iterables are sorted and de-duplicated first.
    """
    if not isinstance(subset, PointSubset):
        subset = PointSubset(tuple(sorted(set(int(i) for i in subset))))
    return subset.check(n)


def snowflake(space: FiniteMetricSpace, alpha) -> FiniteMetricSpace:
    """The metric ``d(x, y) ** alpha`` for ``0 < alpha <= 1``."""
    a = check_alpha(alpha)
    if a == 1.0:
        return space
    # (a + b)^alpha <= a^alpha + b^alpha keeps this a metric; no re-validation
    return FiniteMetricSpace(space.dist ** a, validate=False)


def dist_to_set_all(space: FiniteMetricSpace, subset) -> np.ndarray:
    """``dist(x, S)`` for every point ``x`` at once."""
    s = as_subset(subset, space.n)
    return space.dist[:, list(s.indices)].min(axis=1)


def dist_to_set(space: FiniteMetricSpace, subset: PointSubset | Sequence[int], x: int) -> float:
    """Distance from point ``x`` to the nearest point of ``subset``."""
    s = as_subset(subset, space.n)
    if not 0 <= int(x) < space.n:
        raise DomainError(f"point {x} out of range for {space.n} points")
    return float(space.dist[int(x), list(s.indices)].min())
