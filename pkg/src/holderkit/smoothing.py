"""Tent-kernel averaging on finite metric measure spaces.

With ``p_t(x, y) = max(0, 1 - d(x, y) / t)`` and
``rho_t(x) = sum_y p_t(x, y) mu(y)``, the operator is

    P_t f(x) = sum_y phi_t(x, y) f(y) mu(y),   phi_t = p_t / rho_t(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .certificates import BoundCertificate
from .errors import DomainError, ShapeError
from .lip_analysis import SampledFunction, _row_blocks, lip_norm
from .metric_core import FiniteMetricSpace, check_alpha

__all__ = [
    "MeasureWeights", "DoublingReport", "KernelMatrices", "ImprovementScan",
    "doubling_constant", "build_kernel", "smooth", "approximation_certificate",
    "kernel_lipschitz_certificate", "lipschitz_improvement_certificate",
    "improvement_scan",
]

#: Radii are pushed off the atom distances by this relative amount.
RADIUS_NUDGE = 1e-9


@dataclass(frozen=True, eq=False)
class MeasureWeights:
    """Positive point masses ``mu({i})``."""

    mass: np.ndarray

    def __post_init__(self):
        m = np.array(self.mass, dtype=float)
        if m.ndim != 1 or m.size == 0:
            raise ShapeError("mass must be a nonempty 1-D array")
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise DomainError("every point mass must be finite and positive")
        m.setflags(write=False)
        object.__setattr__(self, "mass", m)

    @classmethod
    def uniform(cls, n, weight=1.0):
        return cls(np.full(int(n), float(weight)))

    @property
    def n(self) -> int:
        return self.mass.shape[0]

    def check(self, space: FiniteMetricSpace) -> "MeasureWeights":
        if self.n != space.n:
            raise ShapeError(f"measure has {self.n} masses, space has {space.n} points")
        return self


class DoublingReport(NamedTuple):
    constant: float
    scanned_radii: np.ndarray
    witness: tuple | None  # (center, radius) attaining the constant


@dataclass(frozen=True, eq=False)
class KernelMatrices:
    t: float
    p: np.ndarray
    rho: np.ndarray
    phi: np.ndarray


def doubling_constant(space: FiniteMetricSpace, mu: MeasureWeights) -> DoublingReport:
    """Largest ratio ``mu(B(x, 2r)) / mu(B(x, r))`` over centers and radii.

    Radii are the pairwise distances and their halves, each multiplied by
    ``1 + 1e-9`` so that open-ball membership is unambiguous. Balls are
    open: ``B(x, r) = {y : d(x, y) < r}``.
    """
    mu.check(space)
    n = space.n
    if n == 1:
        return DoublingReport(1.0, np.empty(0), None)
    off = space.dist[~np.eye(n, dtype=bool)]
    radii = np.unique(np.concatenate([off, off / 2.0])) * (1.0 + RADIUS_NUDGE)
    best, witness = 1.0, None
    for x in range(n):
        order = np.argsort(space.dist[x], kind="stable")
        ds = space.dist[x, order]
        prefix = np.concatenate([[0.0], np.cumsum(mu.mass[order])])
        inner = prefix[np.searchsorted(ds, radii, side="left")]
        outer = prefix[np.searchsorted(ds, 2.0 * radii, side="left")]
        ratio = outer / inner
        k = int(np.argmax(ratio))
        if ratio[k] > best:
            best, witness = float(ratio[k]), (x, float(radii[k]))
    return DoublingReport(best, radii, witness)


def build_kernel(space: FiniteMetricSpace, mu: MeasureWeights, t) -> KernelMatrices:
    t = float(t)
    if not np.isfinite(t) or t <= 0:
        raise DomainError(f"t must be a positive real number, got {t!r}")
    mu.check(space)
    p = np.maximum(0.0, 1.0 - space.dist / t)
    rho = p @ mu.mass  # >= mass[x] > 0 because p[x, x] = 1
    phi = p / rho[:, None]
    for a in (p, rho, phi):
        a.setflags(write=False)
    return KernelMatrices(t, p, rho, phi)


def smooth(f: SampledFunction, kernel: KernelMatrices, mu: MeasureWeights) -> SampledFunction:
    """Apply ``P_t``.

    Evaluated as ``f(x) + sum_y phi(x, y) (f(y) - f(x)) mu(y)``, which equals
    the plain average because the weights sum to one, but maps constants to
    themselves without rounding.
    """
    n = f.space.n
    if kernel.phi.shape != (n, n) or mu.n != n:
        raise ShapeError("function, kernel and measure sizes differ")
    w = kernel.phi * mu.mass[None, :]
    v = f.values
    out = np.empty_like(v)
    for start, stop in _row_blocks(n):
        diff = v[None, :] - v[start:stop, None]
        out[start:stop] = v[start:stop] + np.einsum("ij,ij->i", w[start:stop], diff)
    return SampledFunction(f.space, out)


def approximation_certificate(f: SampledFunction, alpha, kernel: KernelMatrices,
                              mu: MeasureWeights) -> BoundCertificate:
    """Certify ``max_x |P_t f(x) - f(x)| <= |f|_{Lip alpha} * t**alpha``."""
    a = check_alpha(alpha)
    pf = smooth(f, kernel, mu)
    err = np.abs(pf.values - f.values)
    x = int(np.argmax(err))
    seminorm = lip_norm(f, a)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(f.values))))
    return BoundCertificate(
        "smoothing_approximation", float(err[x]), seminorm * kernel.t ** a, tol,
        witnesses={"alpha": a, "t": kernel.t, "seminorm": seminorm, "point": x})


def kernel_lipschitz_certificate(space: FiniteMetricSpace, kernel: KernelMatrices) -> BoundCertificate:
    """Certify ``|p(x, y) - p(z, y)| <= d(x, z) / t`` over all triples.

    ``lhs`` is the largest observed ``max_y |p(x, y) - p(z, y)| / d(x, z)``
    and ``rhs`` is ``1 / t``.
    """
    n = space.n
    worst, pair = 0.0, None
    for x in range(n):
        sup = np.abs(kernel.p[x][None, :] - kernel.p).max(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = sup / space.dist[x]
        r[x] = 0.0
        z = int(np.argmax(r))
        if r[z] > worst:
            worst, pair = float(r[z]), (x, z)
    return BoundCertificate("kernel_lipschitz", worst, 1.0 / kernel.t, 1e-12 / kernel.t,
                            witnesses={"t": kernel.t, "pair": pair})


def _measured_c1(space, kernel, mu):
    # max over d(x,z) <= t of t * sum_y |phi(x,y) - phi(z,y)| mu(y) / d(x,z)
    n = space.n
    t = kernel.t
    best = 0.0
    for x in range(n):
        near = np.flatnonzero((space.dist[x] <= t) & (np.arange(n) != x))
        if near.size == 0:
            continue
        l1 = np.abs(kernel.phi[x][None, :] - kernel.phi[near]) @ mu.mass
        best = max(best, float(np.max(t * l1 / space.dist[x, near])))
    return best


def lipschitz_improvement_certificate(f: SampledFunction, alpha, kernel: KernelMatrices,
                                      mu: MeasureWeights):
    """Measure how much ``P_t`` improves regularity, returning ``(cert, K)``.

    ``K = |P_t f|_Lip / (t**(alpha - 1) |f|_{Lip alpha})`` is the measured
    constant (0 for constant ``f``). The certificate checks
    ``|P_t f|_Lip <= max(3, 2**alpha C1) t**(alpha - 1) |f|_{Lip alpha}``
    where ``C1`` is itself measured on this kernel as the largest
    ``t * sum_y |phi(x, y) - phi(z, y)| mu(y) / d(x, z)`` over
    ``0 < d(x, z) <= t``.
    """
    a = check_alpha(alpha)
    t = kernel.t
    seminorm = lip_norm(f, a)
    smoothed = lip_norm(smooth(f, kernel, mu), 1.0)
    c1 = _measured_c1(f.space, kernel, mu)
    scale = t ** (a - 1.0) * seminorm
    k_meas = smoothed / scale if seminorm > 0 else 0.0
    rhs = max(3.0, 2.0 ** a * c1) * scale
    cert = BoundCertificate(
        "smoothing_lipschitz_improvement", smoothed, rhs, 1e-12 * max(rhs, 1.0),
        witnesses={"alpha": a, "t": t, "seminorm": seminorm,
                   "measured_constant": k_meas, "measured_c1": c1})
    return cert, k_meas


class ImprovementScan(NamedTuple):
    ts: np.ndarray
    constants: np.ndarray
    slope: float  # least-squares slope of log K against log t


def improvement_scan(f: SampledFunction, alpha, mu: MeasureWeights,
                     ts: Sequence[float]) -> ImprovementScan:
    """Measured constants across scales; a slope near 0 means no growth trend."""
    ts = np.asarray(ts, dtype=float)
    ks = np.array([lipschitz_improvement_certificate(
        f, alpha, build_kernel(f.space, mu, t), mu)[1] for t in ts])
    if ts.size < 2 or np.any(ks <= 0):
        slope = float("nan")
    else:
        slope = float(np.polyfit(np.log(ts), np.log(ks), 1)[0])
    return ImprovementScan(ts, ks, slope)
