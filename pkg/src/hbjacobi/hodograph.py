"""Phase of a polynomial along the real line and zero-configuration classifiers.

For a monic polynomial with no real zeros, the continuous phase branch at a
real point t is the sum of principal arguments of (t - z_j) over all zeros.
Each summand is smooth in t because t - z_j never crosses the negative real
axis (its imaginary part is the constant -Im z_j), so the sum can be evaluated
pointwise with no unwrapping. Its total increment over the real line equals
pi * (n_plus - n_minus).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NumericalError, PreconditionError
from .polynomials import ZeroSet, from_roots
from .tolerances import TOL

__all__ = [
    "Verdict",
    "PhaseSample",
    "ConfigReport",
    "PhaseIncrement",
    "Localization",
    "arg_mod_pi",
    "phase",
    "phase_trace",
    "phase_increment",
    "arg_sum",
    "classify_config",
    "localization",
    "write_hodograph_csv",
]

_INITIAL_TRACE_POINTS = 256
_MAX_TRACE_POINTS = 2**20
_MAX_PHASE_STEP = math.pi / 4


class Verdict(str, enum.Enum):
    EQUAL = "Equal"
    LESS = "Less"
    NEITHER = "Neither"
    HAS_REAL_ZERO = "HasRealZero"


@dataclass(frozen=True)
class PhaseSample:
    t: float
    phi: float


@dataclass(frozen=True)
class ConfigReport:
    """Result of classifying a zero set against a pencil parameter alpha.

    ``arg_sum`` is the sum of arguments-mod-pi of the (shifted) zeros, NaN when
    a real zero makes it undefined. ``s`` is the localization index, the count
    of zeros in the lower half-plane.
    """

    arg_sum: float
    arg_alpha: float
    a1: float
    a2: float
    n_plus: int
    n_minus: int
    s: int
    verdict: Verdict

    def as_dict(self) -> dict:
        return {
            "arg_sum": None if math.isnan(self.arg_sum) else self.arg_sum,
            "arg_alpha": self.arg_alpha,
            "a1": self.a1,
            "a2": self.a2,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "s": self.s,
            "verdict": self.verdict.value,
        }


class PhaseIncrement(NamedTuple):
    symbolic: float
    numeric: float


class Localization(NamedTuple):
    s: int
    at_boundary: bool


def arg_mod_pi(z: complex) -> float:
    """Argument reduced mod pi to [0, pi): Arg z in the upper half-plane,
    pi + Arg z in the lower, 0 on the real axis (exact sign of Im decides;
    callers police axis tolerances).
    """
    z = complex(z)
    if z == 0:
        raise PreconditionError("argument of zero is undefined")
    if z.imag > 0:
        return math.atan2(z.imag, z.real)
    if z.imag < 0:
        return math.pi + math.atan2(z.imag, z.real)
    return 0.0


def _require_no_real_zero(zeros: ZeroSet):
    if zeros.n_real:
        raise PreconditionError(
            f"{zeros.n_real} zero(s) lie on the real axis within tolerance; "
            "the phase function is undefined there"
        )


def _phase_values(zs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    return np.angle(ts[..., None] - zs).sum(axis=-1)


def phase(zeros: ZeroSet, t):
    """Continuous phase branch at real t (scalar or array)."""
    _require_no_real_zero(zeros)
    zs = zeros.as_array()
    ts = np.asarray(t, dtype=np.float64)
    vals = _phase_values(zs, ts)
    return float(vals) if ts.ndim == 0 else vals


def _refine(zs: np.ndarray, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bisect intervals until every phase step is <= pi/4 (capped point count)."""
    phis = _phase_values(zs, ts)
    while True:
        wide = np.flatnonzero(np.abs(np.diff(phis)) > _MAX_PHASE_STEP)
        if wide.size == 0:
            return ts, phis
        if ts.size + wide.size > _MAX_TRACE_POINTS:
            raise NumericalError("adaptive phase trace exceeded its point budget")
        mids = 0.5 * (ts[wide] + ts[wide + 1])
        ts = np.sort(np.concatenate([ts, mids]))
        phis = _phase_values(zs, ts)


def default_trace_halfwidth(zeros: ZeroSet) -> float:
    return 2.0 * (1.0 + zeros.max_abs)


def phase_trace(zeros: ZeroSet, t_min: float | None = None, t_max: float | None = None):
    """Adaptively sampled phase trace as a list of PhaseSample.

    Defaults to the window [-T, T] with T = 2 * (1 + max|z_j|), seeded with 256
    uniform points; any interval whose phase step exceeds pi/4 is bisected.
    """
    _require_no_real_zero(zeros)
    zs = zeros.as_array()
    half = default_trace_halfwidth(zeros)
    lo = -half if t_min is None else float(t_min)
    hi = half if t_max is None else float(t_max)
    if not lo < hi:
        raise PreconditionError("trace window must be non-degenerate")
    ts = np.linspace(lo, hi, _INITIAL_TRACE_POINTS)
    ts, phis = _refine(zs, ts)
    return [PhaseSample(float(t), float(p)) for t, p in zip(ts, phis)]


def _far_field_endpoint(zs: np.ndarray) -> float:
    # tail of the phase beyond T is bounded by sum|Im z| / (T - max|Re z|)
    imag_budget = max(1.0, float(np.sum(np.abs(zs.imag))))
    return 1.0 + float(np.max(np.abs(zs.real), initial=0.0)) + 1e10 * imag_budget


def phase_increment(zeros: ZeroSet) -> PhaseIncrement:
    """Total phase change over the real line, twice.

    ``symbolic`` is pi * (n_plus - n_minus); ``numeric`` comes from an adaptive
    trace whose endpoints are pushed far enough out that the truncated tails
    contribute less than 1e-10. Disagreement beyond tolerance raises, since it
    signals a misclassified zero.
    """
    _require_no_real_zero(zeros)
    symbolic = math.pi * (zeros.n_plus - zeros.n_minus)
    zs = zeros.as_array()
    t_far = _far_field_endpoint(zs)
    core = default_trace_halfwidth(zeros)
    seed = np.concatenate([[-t_far], np.linspace(-core, core, _INITIAL_TRACE_POINTS), [t_far]])
    _, phis = _refine(zs, seed)
    numeric = float(phis[-1] - phis[0])
    if abs(symbolic - numeric) > TOL.increment:
        raise NumericalError(
            f"phase increment mismatch: symbolic {symbolic:.12g} vs numeric {numeric:.12g}; "
            "a zero is probably misclassified relative to the real axis"
        )
    return PhaseIncrement(symbolic, numeric)


def arg_sum(zeros: ZeroSet) -> float:
    """Sum of arguments-mod-pi over all zeros (requires none on the axis)."""
    _require_no_real_zero(zeros)
    return math.fsum(arg_mod_pi(z) for z in zeros)


def classify_config(zeros: ZeroSet, alpha: complex, xi: float = 0.0) -> ConfigReport:
    """Compare the shifted argument sum of a zero set with Arg(alpha).

    Verdicts: Equal when the sum matches Arg(alpha) within ``equality * n``;
    Less when strictly below; Neither when above; HasRealZero when some
    z_j - xi sits on the axis within tolerance (the comparison is undefined).
    """
    alpha = complex(alpha)
    if not alpha.imag > 0:
        raise PreconditionError("alpha must lie in the open upper half-plane")
    shifted = zeros.shifted(xi)
    arg_alpha = cmath.phase(alpha)
    a1 = arg_mod_pi(1 - alpha)
    a2 = arg_mod_pi(alpha)
    if shifted.n_real:
        total = math.nan
        verdict = Verdict.HAS_REAL_ZERO
    else:
        total = arg_sum(shifted)
        band = TOL.equality * max(1, len(shifted))
        if abs(total - arg_alpha) <= band:
            verdict = Verdict.EQUAL
        elif total < arg_alpha:
            verdict = Verdict.LESS
        else:
            verdict = Verdict.NEITHER
    return ConfigReport(
        arg_sum=total,
        arg_alpha=arg_alpha,
        a1=a1,
        a2=a2,
        n_plus=shifted.n_plus,
        n_minus=shifted.n_minus,
        s=shifted.n_minus,
        verdict=verdict,
    )


def localization(zeros: ZeroSet) -> Localization:
    """Sign split of the real-part polynomial from the argument sum.

    For zeros all in the upper half-plane, returns the unique integer s with
    pi/2 + pi*(s-1) < sum Arg z_j < pi/2 + pi*s, or ``at_boundary=True`` when
    the sum sits on a boundary value within tolerance (then the real-part
    polynomial vanishes at the origin).
    """
    if zeros.n_minus or zeros.n_real:
        raise PreconditionError("localization requires every zero strictly in the upper half-plane")
    total = math.fsum(cmath.phase(z) for z in zeros)
    x = (total - math.pi / 2) / math.pi
    nearest = round(x)
    if abs(total - (math.pi / 2 + math.pi * nearest)) <= TOL.equality * max(1, len(zeros)):
        return Localization(int(nearest), True)
    return Localization(int(math.floor(x)) + 1, False)


def write_hodograph_csv(zeros: ZeroSet, path) -> int:
    """Write the adaptive trace as CSV rows t,re_h,im_h,phi; returns row count."""
    samples = phase_trace(zeros)
    h = from_roots(zeros.zeros)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("t,re_h,im_h,phi\n")
        for s in samples:
            v = h.eval(complex(s.t))
            fh.write(f"{s.t:.17g},{v.real:.17g},{v.imag:.17g},{s.phi:.17g}\n")
    return len(samples)
