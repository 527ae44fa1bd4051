"""Lipschitz regularisation by inf/sup-convolution with ``L * d(x, w)``.

``a_l`` returns the largest ``L``-Lipschitz minorant of ``f`` and ``b_l`` the
smallest ``L``-Lipschitz majorant. This module also has the error bounds
for Hoelder ``f`` and the level-set decomposition built on the maximal
function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certificates import BoundCertificate
from .errors import DomainError, NoGoodPointsError
from .lip_analysis import SampledFunction, _row_blocks, lip_norm, maximal_function
from .metric_core import PointSubset, check_alpha, dist_to_set_all

__all__ = [
    "RegularizationResult", "TruncationDecomposition", "a_l", "b_l",
    "error_certificate", "restricted_range_check", "truncation_decomposition",
    "truncation_certificates",
]


@dataclass(frozen=True, eq=False)
class RegularizationResult:
    out: SampledFunction
    L: float
    side: str  # "lower" for a_l, "upper" for b_l
    witnesses: np.ndarray
    alpha: float | None = None


@dataclass(frozen=True, eq=False)
class TruncationDecomposition:
    L: float
    good_set: PointSubset
    a_lf: SampledFunction
    b_lf: SampledFunction
    dist_to_good: SampledFunction
    maximal: SampledFunction


def _check_L(L) -> float:
    L = float(L)
    if not np.isfinite(L) or L <= 0:
        raise DomainError(f"L must be a positive real number, got {L!r}")
    return L


def _real(f: SampledFunction):
    if f.is_complex:
        raise DomainError("regularisation needs a real-valued function")


def _inf_conv(values, dist, L):
    # w can only undercut f(x) when (f(x) - f(w)) / d(x, w) > L; deciding that
    # in quotient form, as the maximal function does, keeps A_L f = f exact
    # wherever N(f) <= L
    n = values.shape[0]
    out = np.empty(n)
    wit = np.empty(n, dtype=np.intp)
    for start, stop in _row_blocks(n):
        block = dist[start:stop]
        cand = values[None, :] + L * block
        with np.errstate(divide="ignore", invalid="ignore"):
            useless = (values[start:stop, None] - values[None, :]) / block <= L
        cand[useless] = np.inf  # the diagonal (0/0) is never masked
        k = np.argmin(cand, axis=1)  # first index wins ties
        wit[start:stop] = k
        out[start:stop] = cand[np.arange(stop - start), k]
    return out, wit


def a_l(f: SampledFunction, L, alpha=None) -> RegularizationResult:
    """``A_L(f)(x) = min_w f(w) + L d(x, w)`` with the minimising ``w``.

    The witness is ``x`` itself whenever ``x`` attains the minimum, and
    otherwise the first minimising index.
    """
    L = _check_L(L)
    _real(f)
    out, wit = _inf_conv(f.values, f.space.dist, L)
    return RegularizationResult(SampledFunction(f.space, out), L, "lower", wit, alpha)


def b_l(f: SampledFunction, L, alpha=None) -> RegularizationResult:
    """``B_L(f)(x) = max_w f(w) - L d(x, w)``, computed as ``-A_L(-f)``."""
    L = _check_L(L)
    _real(f)
    out, wit = _inf_conv(-f.values, f.space.dist, L)
    return RegularizationResult(SampledFunction(f.space, -out), L, "upper", wit, alpha)


def error_certificate(f: SampledFunction, alpha, L) -> BoundCertificate:
    """Certify ``max(f - A_L f, B_L f - f) <= |f|_a**(1/(1-a)) * L**(-a/(1-a))``.

    Only ``0 < alpha < 1`` is meaningful. For ``alpha = 1`` there is nothing
    to certify: ``A_L f = f`` as soon as ``L >= |f|_Lip``.
    """
    try:
        a = check_alpha(alpha, strict_upper=True)
    except DomainError as exc:
        raise DomainError(
            f"{exc}; with alpha = 1 use a_l directly, which equals f once "
            "L >= the Lipschitz seminorm") from None
    L = _check_L(L)
    seminorm = lip_norm(f, a)
    lo = a_l(f, L).out.values
    hi = b_l(f, L).out.values
    gap_lo = f.values - lo
    gap_hi = hi - f.values
    i_lo, i_hi = int(np.argmax(gap_lo)), int(np.argmax(gap_hi))
    lhs = max(float(gap_lo[i_lo]), float(gap_hi[i_hi]))
    rhs = seminorm ** (1.0 / (1.0 - a)) * L ** (-a / (1.0 - a))
    return BoundCertificate(
        "inf_convolution_error", lhs, rhs,
        witnesses={"alpha": a, "L": L, "seminorm": seminorm,
                   "lower_point": i_lo, "lower_gap": float(gap_lo[i_lo]),
                   "upper_point": i_hi, "upper_gap": float(gap_hi[i_hi])})


def restricted_range_check(f: SampledFunction, alpha, L) -> BoundCertificate:
    """Compare full minima with minima over ``{w : L d(x,w)**(1-a) <= |f|_a}``.

    ``lhs`` is the largest absolute difference over both sides (``A_L`` and
    ``B_L``); the certificate demands exact equality (``rhs = 0``).
    """
    a = check_alpha(alpha, strict_upper=True)
    L = _check_L(L)
    _real(f)
    seminorm = lip_norm(f, a)
    d = f.space.dist
    v = f.values
    worst, worst_x, max_range = 0.0, None, 0
    for start, stop in _row_blocks(f.space.n):
        block = d[start:stop]
        allowed = L * block ** (1.0 - a) <= seminorm
        max_range = max(max_range, int(allowed.sum(axis=1).max()))
        lo = v[None, :] + L * block
        hi = v[None, :] - L * block
        diff = np.maximum(
            np.abs(np.where(allowed, lo, np.inf).min(axis=1) - lo.min(axis=1)),
            np.abs(np.where(allowed, hi, -np.inf).max(axis=1) - hi.max(axis=1)))
        k = int(np.argmax(diff))
        if diff[k] > worst:
            worst, worst_x = float(diff[k]), start + k
    return BoundCertificate(
        "restricted_range", worst, 0.0,
        witnesses={"alpha": a, "L": L, "seminorm": seminorm,
                   "worst_point": worst_x, "max_range_size": max_range})


def truncation_decomposition(f: SampledFunction, L) -> TruncationDecomposition:
    """Split the space by the level set ``F_L = {x : N(f)(x) <= L}``.

    Raises
    ------
    NoGoodPointsError
        If ``F_L`` is empty.
    """
    L = _check_L(L)
    _real(f)
    nf = maximal_function(f)
    good = np.flatnonzero(nf.values <= L)
    if good.size == 0:
        raise NoGoodPointsError(L, float(nf.values.min()))
    good_set = PointSubset(tuple(int(i) for i in good))
    dist = SampledFunction(f.space, dist_to_set_all(f.space, good_set))
    return TruncationDecomposition(L, good_set, a_l(f, L).out, b_l(f, L).out, dist, nf)


def truncation_certificates(f: SampledFunction, dec: TruncationDecomposition,
                            tolerance=1e-9) -> list[BoundCertificate]:
    """Certificates for agreement on ``F_L`` and the ``2 L dist(x, F_L)`` bounds.

    The two bound certificates report the worst point, i.e. the ``x``
    maximising ``deviation - 2 L dist(x, F_L)``.
    """
    idx = list(dec.good_set.indices)
    v = f.values
    agree = max(float(np.max(np.abs(v[idx] - dec.a_lf.values[idx]))),
                float(np.max(np.abs(v[idx] - dec.b_lf.values[idx]))))
    certs = [BoundCertificate("truncation_agreement", agree, 0.0,
                              witnesses={"L": dec.L, "good_set_size": len(idx)})]
    budget = 2.0 * dec.L * dec.dist_to_good.values
    for name, dev in (("truncation_lower", v - dec.a_lf.values),
                      ("truncation_upper", dec.b_lf.values - v)):
        x = int(np.argmax(dev - budget))
        certs.append(BoundCertificate(
            name, float(dev[x]), float(budget[x]), tolerance,
            witnesses={"L": dec.L, "point": x,
                       "dist_to_good": float(dec.dist_to_good.values[x])}))
    return certs
