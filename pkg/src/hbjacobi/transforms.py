"""Forward and inverse Hermite-Biehler maps.

Classical form: h = p - i*l*q with real monic p (degree n) and q (degree
<= n-1). Generalized pencil forms: h = alpha*p + (1-alpha)*(z-xi)*q with
deg q = n-1, and the equal-degree pencil h = alpha*p + (1-alpha)*r. The
pencil split solves, per coefficient, the real 2x2 system
    Re(alpha)*p_j + (1-Re(alpha))*r_j = Re(h_j)
    Im(alpha)*p_j - Im(alpha)*r_j     = Im(h_j)
whose determinant is -Im(alpha), so the real pair (p, r) is unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, PreconditionError
from .hodograph import ConfigReport, Verdict, classify_config
from .polynomials import ComplexPoly, RealPoly, ZeroSet, is_strictly_interlacing, roots
from .tolerances import TOL

__all__ = [
    "ClassicalSplit",
    "PencilSplit",
    "GeneralizedSplit",
    "HBReport",
    "alpha_from_k",
    "classical_combine",
    "classical_split",
    "hb_verify",
    "generalized_combine",
    "pencil_combine",
    "pencil_split",
    "generalized_split",
]


@dataclass(frozen=True)
class ClassicalSplit:
    """h = p - i*l*q. ``q`` is None for real h (the unperturbed, Hermitian case,
    flagged rather than treated as an error)."""

    p: RealPoly
    q: RealPoly | None
    l: float

    @property
    def is_hermitian(self) -> bool:
        return self.q is None


@dataclass(frozen=True)
class PencilSplit:
    """h = alpha*p + (1-alpha)*r with p, r real monic of equal degree."""

    p: RealPoly
    r: RealPoly
    alpha: complex


@dataclass(frozen=True)
class HBReport:
    ok: bool
    reason: str | None
    l: float
    p_zeros: tuple
    q_zeros: tuple
    combined: ZeroSet
    all_upper: bool
    agrees: bool


@dataclass(frozen=True)
class GeneralizedSplit:
    """Outcome of splitting h against (alpha, xi).

    Equal verdict: ``q`` holds the degree n-1 factor with r = (z-xi)*q.
    Less verdict: ``r`` holds the equal-degree partner and ``q`` is None.
    ``warning`` carries a message when the guaranteed interlacing pattern
    could not be confirmed numerically.
    """

    verdict: Verdict
    p: RealPoly
    q: RealPoly | None
    r: RealPoly | None
    report: ConfigReport
    p_zeros: tuple
    partner_zeros: tuple
    interlacing_ok: bool
    warning: str | None


def alpha_from_k(k: float) -> complex:
    """Pencil parameter 1 + i*k for a positive coupling k."""
    if not k > 0:
        raise PreconditionError("k must be positive")
    return complex(1.0, k)


def _require_monic(p, name):
    if not p.is_monic:
        raise PreconditionError(f"{name} must be monic")


def classical_combine(p: RealPoly, q: RealPoly, l: float) -> ComplexPoly:
    """Assemble h = p - i*l*q; requires monic p, q with deg q <= deg p - 1."""
    _require_monic(p, "p")
    _require_monic(q, "q")
    if q.degree > p.degree - 1:
        raise PreconditionError(
            f"degree violation: deg q = {q.degree} must be <= deg p - 1 = {p.degree - 1}"
        )
    return p + (-1j * l) * q


def classical_split(h: ComplexPoly) -> ClassicalSplit:
    """Unique representation h = p - i*l*q with p, q real monic.

    p is the real part; l is minus the leading coefficient of the imaginary
    part, and q the imaginary part normalized monic. A real h returns the
    Hermitian result (l = 0, q = None).
    """
    _require_monic(h, "h")
    cs = np.asarray(h.coeffs, dtype=np.complex128)
    p = RealPoly(cs.real)
    imag = cs.imag
    scale = max(1.0, float(np.max(np.abs(cs))))
    nonzero = np.flatnonzero(np.abs(imag) > 1e-14 * scale)
    if nonzero.size == 0:
        return ClassicalSplit(p=p, q=None, l=0.0)
    d = int(nonzero[-1])  # <= deg h - 1 since h is monic
    l = -float(imag[d])
    q = RealPoly(imag[: d + 1] / imag[d])
    return ClassicalSplit(p=p, q=q, l=l)


def _real_zeros_of(p: RealPoly):
    """Roots of a real polynomial projected to the axis; None when some root
    has an imaginary part above the classification tolerance."""
    if p.degree == 0:
        return ()
    zs = roots(p)
    if zs.n_real != len(zs):
        return None
    return tuple(sorted(z.real for z in zs))


def hb_verify(p: RealPoly, q: RealPoly, l: float) -> HBReport:
    """Check the classical stability criterion and cross-check it on the roots
    of the combined polynomial.

    True iff l > 0 and the zeros of p and q are real, simple and strictly
    interlacing; the report also says whether that matches "all roots of
    p - i*l*q in the upper half-plane".
    """
    combined = roots(classical_combine(p, q, l))
    all_upper = combined.n_plus == len(combined)

    ok, reason = True, None
    lam = _real_zeros_of(p)
    mu = _real_zeros_of(q)
    if q.degree != p.degree - 1:
        ok, reason = False, "q does not have degree n-1"
    elif not l > 0:
        ok, reason = False, "l is not positive"
    elif lam is None:
        ok, reason = False, "p has non-real zeros"
    elif mu is None:
        ok, reason = False, "q has non-real zeros"
    elif not is_strictly_interlacing(lam, mu):
        ok, reason = False, "zeros of p and q do not strictly interlace"
    return HBReport(
        ok=ok,
        reason=reason,
        l=float(l),
        p_zeros=lam or (),
        q_zeros=mu or (),
        combined=combined,
        all_upper=all_upper,
        agrees=ok == all_upper,
    )


def generalized_combine(p: RealPoly, q: RealPoly, alpha: complex, xi: float = 0.0) -> ComplexPoly:
    """Assemble the pencil h = alpha*p + (1-alpha)*(z-xi)*q."""
    alpha = complex(alpha)
    if not alpha.imag > 0:
        raise PreconditionError("alpha must lie in the open upper half-plane")
    _require_monic(p, "p")
    _require_monic(q, "q")
    if q.degree != p.degree - 1:
        raise PreconditionError(
            f"degree violation: deg q = {q.degree} must equal deg p - 1 = {p.degree - 1}"
        )
    scale = (1.0 + float(np.max(np.abs(p.coeffs)))) * max(1.0, abs(xi)) ** p.degree
    if abs(p.eval(xi)) <= 1e-12 * scale:
        raise PreconditionError(
            "p vanishes at the shift point; divide the common factor out and "
            "use the equal-degree pencil instead"
        )
    shifted_q = np.zeros(p.degree + 1, dtype=np.complex128)
    conv = np.convolve([-xi, 1.0], q.coeffs)
    shifted_q[: len(conv)] = conv
    cs = alpha * np.asarray(p.coeffs, dtype=np.complex128) + (1 - alpha) * shifted_q
    cs[-1] = 1.0  # alpha + (1 - alpha) exactly, immune to rounding
    return ComplexPoly(cs)


def pencil_combine(p: RealPoly, r: RealPoly, alpha: complex) -> ComplexPoly:
    """Assemble the equal-degree pencil h = alpha*p + (1-alpha)*r."""
    alpha = complex(alpha)
    if alpha.imag == 0:
        raise PreconditionError("alpha must have nonzero imaginary part")
    _require_monic(p, "p")
    _require_monic(r, "r")
    if p.degree != r.degree:
        raise PreconditionError(
            f"degree violation: deg p = {p.degree} must equal deg r = {r.degree}"
        )
    cs = alpha * np.asarray(p.coeffs, dtype=np.complex128) + (1 - alpha) * np.asarray(
        r.coeffs, dtype=np.complex128
    )
    cs[-1] = 1.0
    return ComplexPoly(cs)


def pencil_split(h: ComplexPoly, alpha: complex) -> PencilSplit:
    """Unique real monic pair (p, r) with h = alpha*p + (1-alpha)*r."""
    alpha = complex(alpha)
    if alpha.imag == 0:
        raise PreconditionError("alpha must have nonzero imaginary part")
    _require_monic(h, "h")
    cs = np.asarray(h.coeffs, dtype=np.complex128)
    ratio = cs.imag / alpha.imag
    p = RealPoly(cs.real + (1.0 - alpha.real) * ratio)
    r = RealPoly(cs.real - alpha.real * ratio)
    return PencilSplit(p=p, r=r, alpha=alpha)


def _deflate(p: RealPoly, xi: float) -> RealPoly:
    """Synthetic division of p by (z - xi); the remainder is discarded."""
    c = p.coeffs
    n = p.degree
    out = np.empty(n)
    out[n - 1] = c[n]
    for k in range(n - 1, 0, -1):
        out[k - 1] = c[k] + xi * out[k]
    return RealPoly(out)


def _almost_interlacing_around(lam, mu, xi) -> bool:
    # the pattern lam_1 < mu_1 < ... lam_s < mu_s < xi < mu_{s+1} < lam_{s+1} < ...
    # is exactly strict interlacing of the zero sets {xi} U lam and mu
    return is_strictly_interlacing(sorted((*lam, xi)), mu)


def generalized_split(h: ComplexPoly, alpha: complex, xi: float = 0.0) -> GeneralizedSplit:
    """Invert the pencil map for a polynomial whose zero configuration matches
    one of the two admissible patterns.

    Equal verdict: r must vanish at xi; it is deflated to (z-xi)*q and the
    strict interlacing of p and q is confirmed. Less verdict: the equal-degree
    pair (p, r) is returned with the broken-at-xi interlacing pattern
    confirmed. Any other verdict is rejected. Because the patterns are
    guaranteed once the verdict matches, a failed numerical confirmation is
    downgraded to a warning instead of an error.
    """
    zeros = roots(h)
    report = classify_config(zeros, alpha, xi)
    if report.verdict is Verdict.HAS_REAL_ZERO:
        raise PreconditionError("the polynomial has a zero on the real axis within tolerance")
    if report.verdict is Verdict.NEITHER:
        raise PreconditionError(
            f"zero configuration matches neither admissible pattern: "
            f"argument sum {report.arg_sum:.12g} exceeds Arg(alpha) = {report.arg_alpha:.12g}"
        )
    ps = pencil_split(h, alpha)
    n = h.degree

    warning = None
    lam = _real_zeros_of(ps.p)
    if lam is None:
        warning = "zeros of p could not be confirmed real; numerical breakdown likely"
        lam = ()

    if report.verdict is Verdict.EQUAL:
        residual = abs(ps.r.eval(xi))
        # noise in r inherits the coefficient scale of h
        scale = max(1.0, float(np.max(np.abs(h.coeffs))))
        if residual > TOL.pencil_residual * (1.0 + abs(xi)) ** n * scale:
            raise NumericalError(
                f"partner polynomial should vanish at the shift point but |r(xi)| = {residual:.3g}"
            )
        q = _deflate(ps.r, xi)
        mu = _real_zeros_of(q)
        if mu is None:
            warning = warning or "zeros of q could not be confirmed real"
            mu = ()
        interlacing_ok = bool(lam and len(mu) == len(lam) - 1 and is_strictly_interlacing(lam, mu))
        if not interlacing_ok and warning is None:
            warning = "strict interlacing could not be confirmed numerically"
        if lam and zeros.n_plus != sum(1 for x in lam if x > xi) and warning is None:
            warning = "upper half-plane count does not match zeros of p above the shift point"
        return GeneralizedSplit(
            verdict=report.verdict,
            p=ps.p,
            q=q,
            r=None,
            report=report,
            p_zeros=lam,
            partner_zeros=mu,
            interlacing_ok=interlacing_ok,
            warning=warning,
        )

    mu = _real_zeros_of(ps.r)
    if mu is None:
        warning = warning or "zeros of r could not be confirmed real"
        mu = ()
    interlacing_ok = bool(
        lam and len(mu) == len(lam) and _almost_interlacing_around(lam, mu, xi)
    )
    if not interlacing_ok and warning is None:
        warning = "broken-interlacing pattern could not be confirmed numerically"
    return GeneralizedSplit(
        verdict=report.verdict,
        p=ps.p,
        q=None,
        r=ps.r,
        report=report,
        p_zeros=lam,
        partner_zeros=mu,
        interlacing_ok=interlacing_ok,
        warning=warning,
    )
