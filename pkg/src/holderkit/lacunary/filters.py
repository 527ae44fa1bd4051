"""Band-limited test functions and recovery of lacunary coefficients.

The filter ``psi`` has Fourier transform (convention
``psi_hat(xi) = int exp(i xi x) psi(x) dx``) equal to a smooth bump supported
in ``(lo, hi) subset [1/2, 2]`` with ``psi_hat(1) = 1``, so integrating a
lacunary series against ``2**j psi(2**j x)`` isolates the ``j``-th term.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..certificates import BoundCertificate
from ..errors import DomainError, FilterError
from .series import Grid1D, LacunarySpec, evaluate, lip_alpha_upper_bound

__all__ = [
    "BumpProfile", "BandLimitedFilter", "RecoveryReport",
    "build_band_limited_filter", "default_filter", "recover_coefficient",
    "recover_all", "coefficient_bound_certificate",
]

#: Highest frequency, in filter coordinates, the default grid resolves.
DEFAULT_MAX_FREQUENCY = 2.0 ** 9
DEFAULT_TAIL_TOL = 1e-5
_CHUNK = 2048


@dataclass(frozen=True)
class BumpProfile:
    """``exp(1 - 1/(1 - s**2))`` in the variable ``s``, affine in ``log(xi)``.

    ``s`` maps ``lo -> -1`` and ``hi -> 1``; the result is divided by its
    value at ``xi = 1`` so that the profile equals 1 there.
    """

    lo: float = 0.5
    hi: float = 2.0

    def __post_init__(self):
        if not (0.5 <= self.lo < 1.0 < self.hi <= 2.0):
            raise FilterError(
                f"profile support ({self.lo}, {self.hi}) must contain 1 and lie in [1/2, 2]")

    def _raw(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = np.zeros(xi.shape)
        inside = (xi > self.lo) & (xi < self.hi)
        la, lb = math.log(self.lo), math.log(self.hi)
        s = (2.0 * np.log(xi[inside]) - (la + lb)) / (lb - la)
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - s * s))
        return out

    def __call__(self, xi):
        return self._raw(xi) / self._raw(np.array([1.0]))[0]


@dataclass(frozen=True, eq=False)
class BandLimitedFilter:
    """Samples of ``psi`` on a uniform grid plus the spectral nodes used."""

    profile: BumpProfile
    grid: Grid1D
    psi: np.ndarray
    xi: np.ndarray
    spectrum: np.ndarray
    decay: dict = field(default_factory=dict)  # k -> c_k with |psi| <= c_k (1+|x|)**-k
    tail_estimate: float = float("nan")

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    @property
    def step(self) -> float:
        return self.grid.step

    @property
    def radius(self) -> float:
        return float(np.max(np.abs(self.x)))

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.grid.count, self.grid.step)
        w[0] = w[-1] = self.grid.step / 2.0
        return w

    def dilated_spectrum(self, j, xi):
        """Fourier transform of ``2**j psi(2**j x)`` at ``xi``."""
        return self.profile(np.ldexp(np.asarray(xi, dtype=float), -int(j)))

    def integral(self) -> complex:
        """Quadrature of ``psi`` itself, which should vanish."""
        return complex(np.sum(self.weights * self.psi))

    def validate(self, tol=1e-12) -> "BandLimitedFilter":
        """Check the stored spectral samples: value 1 at 1, zero off support."""
        at_one = self.spectrum[np.flatnonzero(self.xi == 1.0)]
        if at_one.size != 1 or abs(at_one[0] - 1.0) > tol:
            raise FilterError("filter spectrum is not normalised to 1 at xi = 1")
        outside = (self.xi <= 0.5) | (self.xi >= 2.0)
        if np.any(np.abs(self.spectrum[outside]) > tol):
            raise FilterError("filter spectrum is nonzero outside (1/2, 2)")
        if np.any(~np.isfinite(self.spectrum)) or np.any(self.spectrum < -tol):
            raise FilterError("filter spectrum must be finite and nonnegative")
        return self


def _spectral_nodes(profile, radius):
    # replicas of psi sit 2 pi / dxi apart; keep them beyond 4 * radius
    target = 2.0 * math.pi / (4.0 * max(radius, 1.0))
    pieces, weights = [], []
    for a, b in ((profile.lo, 1.0), (1.0, profile.hi)):
        m = max(8, int(math.ceil((b - a) / target)))
        nodes = np.linspace(a, b, m + 1)
        w = np.full(m + 1, (b - a) / m)
        w[0] = w[-1] = (b - a) / (2 * m)
        pieces.append(nodes)
        weights.append(w)
    # merge the shared node at xi = 1
    xi = np.concatenate([pieces[0], pieces[1][1:]])
    w = np.concatenate([weights[0][:-1], [weights[0][-1] + weights[1][0]], weights[1][1:]])
    return xi, w


def _inverse_transform(x, xi, coef):
    # psi(x) = (1 / 2 pi) int exp(-i xi x) psi_hat(xi) d xi; psi(-x) = conj(psi(x))
    ax = np.abs(x)
    out = np.empty(x.shape, dtype=complex)
    for s in range(0, x.size, _CHUNK):
        out[s:s + _CHUNK] = np.exp(-1j * np.outer(ax[s:s + _CHUNK], xi)) @ coef
    neg = x < 0
    out[neg] = np.conj(out[neg])
    return out


def _tail_and_decay(x, psi, radius):
    ax = np.abs(x)
    mag = np.abs(psi)
    decay = {k: float(np.max(mag * (1.0 + ax) ** k)) for k in (2, 4)}
    outer = ax >= radius / 2.0
    c4 = float(np.max(mag[outer] * (1.0 + ax[outer]) ** 4)) if outer.any() else decay[4]
    # int_{|x| > R} c4 (1 + |x|)**-4 dx
    return decay, 2.0 * c4 / (3.0 * (1.0 + radius) ** 3)


def build_band_limited_filter(profile: BumpProfile | None = None, grid: Grid1D | None = None, *,
                              max_frequency=DEFAULT_MAX_FREQUENCY, tail_tol=DEFAULT_TAIL_TOL,
                              max_radius=8192.0) -> BandLimitedFilter:
    """Sample ``psi`` by trapezoid quadrature of its spectral profile.

    Parameters
    ----------
    profile : BumpProfile, optional
        Spectral bump; the default is supported on ``(1/2, 2)``.
    grid : Grid1D, optional
        Sampling grid in ``x``. When omitted, a symmetric grid is chosen:
        its step resolves frequencies up to ``max_frequency`` without
        aliasing into the filter band, and its radius doubles (found on a
        coarse probe grid) until the decay envelope
        ``c_4 (1 + |x|)**-4`` bounds the truncated tail below ``tail_tol``.

    Raises
    ------
    FilterError
        If the profile is invalid or no radius up to ``max_radius``
        reaches ``tail_tol``.
    """
    profile = BumpProfile() if profile is None else profile
    if grid is None:
        radius = 64.0
        while True:
            probe = np.arange(-radius, radius + 0.125, 0.25)
            xi, w = _spectral_nodes(profile, radius)
            psi = _inverse_transform(probe, xi, w * profile(xi) / (2.0 * math.pi))
            _, tail = _tail_and_decay(probe, psi, radius)
            if tail < tail_tol:
                break
            radius *= 2.0
            if radius > max_radius:
                raise FilterError(f"tail estimate {tail:.3g} above {tail_tol} at radius {max_radius}")
        step = 2.0 * math.pi / (max_frequency + profile.hi) * 0.99
        half = int(math.ceil(radius / step))
        grid = Grid1D(-half * step, step, 2 * half + 1)
    x = grid.points
    radius = float(np.max(np.abs(x)))
    xi, w = _spectral_nodes(profile, radius)
    spectrum = profile(xi)
    psi = _inverse_transform(x, xi, w * spectrum / (2.0 * math.pi))
    decay, tail = _tail_and_decay(x, psi, radius)
    psi.setflags(write=False)
    return BandLimitedFilter(profile, grid, psi, xi, spectrum, decay, tail).validate()


@functools.lru_cache(maxsize=4)
def default_filter(profile: BumpProfile = BumpProfile()) -> BandLimitedFilter:
    """Cached :func:`build_band_limited_filter` with default settings."""
    return build_band_limited_filter(profile)


class RecoveryReport(NamedTuple):
    j: int
    estimate: complex
    error: float  # |estimate - a_j|
    radius: float
    tail_estimate: float


def _check_for(spec: LacunarySpec, j: int, filt: BandLimitedFilter, tol=1e-12):
    filt.validate()
    others = [l for l in range(spec.N) if l != j]
    leak = filt.dilated_spectrum(j, np.ldexp(1.0, others)) if others else np.zeros(0)
    if np.any(np.abs(leak) > tol):
        l = others[int(np.argmax(np.abs(leak) > tol))]
        raise FilterError(f"dilated filter for j={j} does not vanish at frequency 2**{l}")
    top = 2.0 ** (spec.N - 1 - j)
    if 2.0 * math.pi / filt.step < top + filt.profile.hi:
        raise FilterError(
            f"filter grid step {filt.step:.4g} aliases frequency {top:g}; "
            "build the filter with a larger max_frequency")


def recover_coefficient(spec: LacunarySpec, j: int, filt: BandLimitedFilter | None = None) -> RecoveryReport:
    """Estimate ``a_j`` as ``2**(j alpha) int f(x) 2**j psi(2**j x) dx``.

    The integral is taken in the filter's own variable ``u = 2**j x`` with
    the trapezoid rule on the filter grid.
    """
    j = int(j)
    if not 0 <= j < spec.N:
        raise IndexError(f"coefficient index {j} out of range for {spec.N} terms")
    filt = default_filter() if filt is None else filt
    _check_for(spec, j, filt)
    fu = evaluate(spec, np.ldexp(filt.x, -j))
    q = np.sum(filt.weights * fu * filt.psi)
    est = complex(2.0 ** (j * spec.alpha) * q)
    return RecoveryReport(j, est, float(abs(est - spec.coeffs[j])), filt.radius, filt.tail_estimate)


def recover_all(spec: LacunarySpec, filt: BandLimitedFilter | None = None) -> list[RecoveryReport]:
    return [recover_coefficient(spec, j, filt) for j in range(spec.N)]


def coefficient_bound_certificate(spec: LacunarySpec, filt: BandLimitedFilter | None = None,
                                  lip_seminorm_bound=None) -> BoundCertificate:
    """Certify ``max_j |a_j| <= S * int |x|**alpha |psi(x)| dx``.

    ``S`` must be an upper bound for the Lip-alpha seminorm of the series.
    By default it is the closed-form bound, which needs ``alpha < 1``.
    """
    filt = default_filter() if filt is None else filt
    filt.validate()
    if lip_seminorm_bound is None:
        if spec.alpha == 1.0:
            raise DomainError("alpha = 1 needs an explicit lip_seminorm_bound")
        lip_seminorm_bound = lip_alpha_upper_bound(spec.alpha, spec.A)
    moment = float(np.sum(filt.weights * np.abs(filt.x) ** spec.alpha * np.abs(filt.psi)))
    return BoundCertificate(
        "coefficient_bound", spec.A, float(lip_seminorm_bound) * moment,
        witnesses={"alpha": spec.alpha, "seminorm_bound": float(lip_seminorm_bound),
                   "filter_moment": moment, "argmax_j": int(np.argmax(np.abs(spec.coeffs)))})
