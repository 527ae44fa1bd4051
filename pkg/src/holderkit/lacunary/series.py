"""Lacunary series ``f(x) = sum_n a_n 2**(-n alpha) exp(2**n i x)`` on the line."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ..certificates import BoundCertificate
from ..errors import DomainError, InputError
from ..metric_core import check_alpha

__all__ = [
    "MAX_TERMS", "LacunarySpec", "Grid1D", "TailBound", "BracketResult",
    "default_grid", "default_h_values", "tail_bound", "evaluate",
    "lip_alpha_upper_bound", "lip_alpha_bracket", "zygmund_seminorm",
    "second_difference_kernel_bound",
]

#: Cap on the number of terms; beyond it the phase of exp(2**n i x) is noise.
MAX_TERMS = 40

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class LacunarySpec:
    """Hoelder order ``alpha`` and finitely many complex coefficients."""

    alpha: float
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size < 1:
            raise DomainError("need at least one coefficient")
        if c.size > MAX_TERMS:
            raise DomainError(f"at most {MAX_TERMS} coefficients are supported, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return self.coeffs.size

    @property
    def A(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    @property
    def tail(self) -> "TailBound":
        """Bound on the omitted terms if the sequence continued with modulus ``A``."""
        return tail_bound(self, self.N)

    def scaled(self, factor) -> "LacunarySpec":
        return LacunarySpec(self.alpha, self.coeffs * factor)

    @classmethod
    def constant(cls, N, alpha, value=1.0) -> "LacunarySpec":
        return cls(alpha, np.full(int(N), value, dtype=complex))

    @classmethod
    def single(cls, N, j, alpha, value=1.0) -> "LacunarySpec":
        c = np.zeros(int(N), dtype=complex)
        c[j] = value
        return cls(alpha, c)

    @classmethod
    def from_json(cls, obj, path=None) -> "LacunarySpec":
        """Parse ``{"alpha": a, "coeffs": [[re, im], ...]}``."""
        try:
            alpha = obj["alpha"]
            coeffs = [complex(float(re), float(im)) for re, im in obj["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed lacunary spec ({exc})", path)
        return cls(alpha, coeffs)

    def to_json(self) -> dict:
        return {"alpha": self.alpha,
                "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}


@dataclass(frozen=True)
class Grid1D:
    """``count`` equally spaced points ``x0 + k * step``."""

    x0: float
    step: float
    count: int

    def __post_init__(self):
        if not (np.isfinite(self.step) and self.step > 0):
            raise DomainError("grid step must be positive")
        if int(self.count) < 2:
            raise DomainError("grid needs at least two points")
        object.__setattr__(self, "count", int(self.count))

    @property
    def points(self) -> np.ndarray:
        return self.x0 + np.arange(self.count) * self.step

    def refine(self) -> "Grid1D":
        """Halve the step; the old points are kept exactly."""
        return Grid1D(self.x0, self.step / 2.0, 2 * self.count)

    @classmethod
    def periodic(cls, count, span=TWO_PI, x0=0.0) -> "Grid1D":
        """``count`` points on ``[x0, x0 + span)`` with step ``span / count``."""
        return cls(x0, span / int(count), count)


def default_grid() -> Grid1D:
    """``2**14`` points on one period ``[0, 2 pi)``."""
    return Grid1D.periodic(1 << 14)


def default_h_values() -> np.ndarray:
    return math.pi * 2.0 ** -np.arange(1, 13)


class TailBound(NamedTuple):
    m: int
    bound: float


def tail_bound(spec: LacunarySpec, m: int) -> TailBound:
    """``A (1 - 2**-alpha)**-1 2**(-m alpha)`` bounds ``|sum_{n >= m} ...|``."""
    a = spec.alpha
    return TailBound(int(m), spec.A / (1.0 - 2.0 ** -a) * 2.0 ** (-m * a))


def evaluate(spec: LacunarySpec, x, start=0, stop=None):
    """Partial sum over ``start <= n < stop`` (default: all terms).

    Phases ``2**n x`` are reduced modulo ``2 pi`` before exponentiation.
    Scalar input gives a complex scalar, array input a complex array.
    """
    xs = np.asarray(x, dtype=float)
    stop = spec.N if stop is None else min(int(stop), spec.N)
    out = np.zeros(xs.shape, dtype=complex)
    for n in range(int(start), stop):
        c = spec.coeffs[n]
        if c == 0:
            continue
        phase = np.mod(np.ldexp(xs, n), TWO_PI)
        out += (c * 2.0 ** (-n * spec.alpha)) * np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


def lip_alpha_upper_bound(alpha, A) -> float:
    """Closed-form bound on the Lip-alpha seminorm for ``0 < alpha < 1``."""
    a = check_alpha(alpha, strict_upper=True)
    b = 1.0 - a
    return A * (2.0 ** (1.0 + a) / (1.0 - 2.0 ** -a) + 2.0 ** -b / (1.0 - 2.0 ** -b))


class BracketResult(NamedTuple):
    lower: float
    upper: float
    certificate: BoundCertificate
    witness: tuple | None  # grid indices (i, j) of the best sampled pair


def _sampled_quotient(values, step, alpha, max_lag):
    best, witness = 0.0, None
    for k in range(1, max_lag + 1):
        diff = np.abs(values[k:] - values[:-k])
        i = int(np.argmax(diff))
        q = float(diff[i]) / (k * step) ** alpha
        if q > best:
            best, witness = q, (i, i + k)
    return best, witness


def lip_alpha_bracket(spec: LacunarySpec, grid: Grid1D | None = None,
                      max_separation=math.pi) -> BracketResult:
    """Bracket the Lip-alpha seminorm of the series between grid and formula.

    ``lower`` is the best quotient ``|f(x) - f(y)| / |x - y|**alpha`` over grid
    pairs with ``|x - y| <= max_separation``; being attained by actual points
    it never exceeds the true seminorm. ``upper`` is the closed-form bound.
    """
    if spec.alpha == 1.0:
        raise DomainError("alpha = 1 has no Lip-alpha bracket; use zygmund_seminorm")
    grid = default_grid() if grid is None else grid
    values = evaluate(spec, grid.points)
    max_lag = min(grid.count - 1, int(math.floor(max_separation / grid.step * (1 + 1e-12))))
    lower, witness = _sampled_quotient(values, grid.step, spec.alpha, max_lag)
    upper = lip_alpha_upper_bound(spec.alpha, spec.A)
    cert = BoundCertificate(
        "lacunary_lip_alpha", lower, upper,
        witnesses={"alpha": spec.alpha, "A": spec.A, "grid_count": grid.count,
                   "grid_step": grid.step, "pair": witness})
    return BracketResult(lower, upper, cert, witness)


def zygmund_seminorm(spec: LacunarySpec, grid: Grid1D | None = None,
                     h_values: Sequence[float] | None = None):
    """Sampled second-difference seminorm, returned with its ``10 A`` certificate.

    Returns ``(estimate, certificate)`` where ``estimate`` is the largest
    ``|f(x + h) + f(x - h) - 2 f(x)| / |h|`` over grid ``x`` and the given
    ``h``.
    """
    if spec.alpha != 1.0:
        raise DomainError(f"Zygmund mode needs alpha = 1, got {spec.alpha}")
    grid = default_grid() if grid is None else grid
    hs = default_h_values() if h_values is None else np.asarray(h_values, dtype=float)
    if hs.size == 0 or np.any(~np.isfinite(hs)) or np.any(hs == 0):
        raise DomainError("h values must be finite and nonzero")
    x = grid.points
    fx = evaluate(spec, x)
    best, witness = 0.0, None
    for h in hs:
        second = np.abs(evaluate(spec, x + h) + evaluate(spec, x - h) - 2.0 * fx) / abs(h)
        i = int(np.argmax(second))
        if second[i] > best:
            best, witness = float(second[i]), (float(x[i]), float(h))
    cert = BoundCertificate("zygmund", best, 10.0 * spec.A,
                            witnesses={"A": spec.A, "x_h": witness,
                                       "grid_count": grid.count, "h_count": int(hs.size)})
    return best, cert


def second_difference_kernel_bound(u, v) -> BoundCertificate:
    """Certify ``|exp(i(u+v)) + exp(i(u-v)) - 2 exp(iu)| <= v**2``."""
    u, v = float(u), float(v)
    lhs = abs(np.exp(1j * (u + v)) + np.exp(1j * (u - v)) - 2.0 * np.exp(1j * u))
    return BoundCertificate("second_difference_kernel", float(lhs), v * v, 1e-12,
                            witnesses={"u": u, "v": v})
