"""Coefficient-form polynomials, an Aberth-Ehrlich root finder, and the strict
interlacing test.

Coefficients are stored constant term first. ``RealPoly``/``ComplexPoly`` are
immutable; arithmetic returns new objects and promotes to complex when either
operand is complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, PreconditionError
from .tolerances import TOL

_MAX_ABERTH_ITERATIONS = 200
_LONG_COMPLEX = getattr(np, "complex256", None)  # x86 long double pair

__all__ = [
    "RealPoly",
    "ComplexPoly",
    "ZeroSet",
    "from_roots",
    "roots",
    "is_strictly_interlacing",
    "poly_to_json",
    "poly_from_json",
]


def _trimmed(coeffs, dtype):
    arr = np.atleast_1d(np.asarray(coeffs, dtype=dtype))
    if arr.ndim != 1 or arr.size == 0:
        raise PreconditionError("coefficient list must be non-empty and one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError("coefficients must be finite")
    nz = np.flatnonzero(arr)
    arr = arr[: nz[-1] + 1] if nz.size else arr[:1]
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


class _Poly:
    """Shared implementation; use RealPoly / ComplexPoly."""

    __slots__ = ("coeffs",)
    _dtype: type = np.float64

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _trimmed(coeffs, self._dtype))

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    @classmethod
    def monic(cls, coeffs):
        """Construct with the leading coefficient divided out (set to exactly 1)."""
        arr = _trimmed(coeffs, cls._dtype)
        lead = arr[-1]
        if lead == 0:
            raise PreconditionError("cannot normalize the zero polynomial to monic form")
        out = np.array(arr / lead)
        out[-1] = 1
        return cls(out)

    def eval(self, z):
        """Horner evaluation; scalar in, scalar out (complex for complex input)."""
        acc = complex(self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            acc = acc * z + c
        if isinstance(z, complex) or self._dtype is np.complex128:
            return acc
        return acc.real

    __call__ = eval

    def eval_many(self, zs: np.ndarray) -> np.ndarray:
        acc = np.full_like(np.asarray(zs, dtype=np.complex128), self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            acc = acc * zs + c
        return acc

    def derivative(self):
        if self.degree == 0:
            return type(self)([0])
        n = np.arange(1, len(self.coeffs))
        return type(self)(self.coeffs[1:] * n)

    def _combine(self, other, sign):
        if not isinstance(other, _Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = np.zeros(max(len(a), len(b)), dtype=np.result_type(a, b))
        out[: len(a)] += a
        out[: len(b)] += sign * b
        return _wrap(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, other):
        if isinstance(other, _Poly):
            return _wrap(np.convolve(self.coeffs, other.coeffs))
        if isinstance(other, (int, float, complex, np.number)):
            return _wrap(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return _wrap(-self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({self.coeffs.tolist()!r})"


class RealPoly(_Poly):
    """Real polynomial, coefficients constant term first."""

    _dtype = np.float64

    @classmethod
    def from_roots(cls, zeros) -> "RealPoly":
        """Monic real polynomial with the given real roots."""
        return cls(_product_from_roots(np.asarray(zeros, dtype=np.float64)))


class ComplexPoly(_Poly):
    """Complex polynomial, coefficients constant term first."""

    _dtype = np.complex128

    def real_part(self) -> RealPoly:
        return RealPoly(self.coeffs.real)

    def imag_part(self) -> RealPoly:
        return RealPoly(self.coeffs.imag)


def _wrap(coeffs):
    cls = ComplexPoly if np.iscomplexobj(coeffs) else RealPoly
    return cls(coeffs)


def _product_from_roots(zs):
    factors = [np.array([-z, zs.dtype.type(1)]) for z in zs]
    if not factors:
        return np.ones(1, dtype=zs.dtype)
    # balanced pairwise products keep the coefficient growth well conditioned
    while len(factors) > 1:
        nxt = [np.convolve(factors[i], factors[i + 1]) for i in range(0, len(factors) - 1, 2)]
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


def from_roots(zeros) -> ComplexPoly:
    """Monic complex polynomial whose zero multiset is ``zeros``."""
    zs = np.asarray(list(zeros), dtype=np.complex128)
    return ComplexPoly(_product_from_roots(zs))


@dataclass(frozen=True)
class ZeroSet:
    """Multiset of complex zeros with half-plane classification.

    ``n_real`` counts zeros within the real-axis tolerance
    |Im z| <= tol * (1 + |z|); the remaining zeros split into ``n_plus``
    (Im > 0) and ``n_minus`` (Im < 0).
    """

    zeros: tuple
    n_plus: int
    n_minus: int
    n_real: int

    @classmethod
    def classify(cls, points, real_tol: float | None = None) -> "ZeroSet":
        tol = TOL.real_axis if real_tol is None else real_tol
        pts = tuple(complex(z) for z in points)
        n_plus = n_minus = n_real = 0
        for z in pts:
            if abs(z.imag) <= tol * (1.0 + abs(z)):
                n_real += 1
            elif z.imag > 0:
                n_plus += 1
            else:
                n_minus += 1
        return cls(pts, n_plus, n_minus, n_real)

    def __post_init__(self):
        if self.n_plus + self.n_minus + self.n_real != len(self.zeros):
            raise PreconditionError("half-plane counts must add up to the number of zeros")

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.zeros, dtype=np.complex128)

    @property
    def max_abs(self) -> float:
        return max((abs(z) for z in self.zeros), default=0.0)

    def shifted(self, xi: float) -> "ZeroSet":
        """Zeros translated by -xi, reclassified against the real axis."""
        return ZeroSet.classify(z - xi for z in self.zeros)


def _horner_many(coeffs, z):
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _aberth(coeffs):
    """Simultaneous root iteration for a monic complex polynomial, degree >= 2.

    Starts on a circle of radius 1 + max|coeff| (a Cauchy bound, so every root
    lies inside) with an angular offset that breaks conjugate symmetry. A root
    is accepted when its correction drops below aberth_step * (1 + |z|) or when
    |p(z)| falls under the rounding-noise bound of the Horner evaluation
    itself, whichever comes first (beyond that point the steps are noise).
    """
    n = len(coeffs) - 1
    deriv = coeffs[1:] * np.arange(1, n + 1)
    abs_coeffs = np.abs(coeffs)
    # Fujiwara root bound: tight within a factor of 2, unlike the Cauchy bound
    # 1 + max|c_k| which balloons the start circle for large coefficients.
    mags = abs_coeffs[-2::-1]
    fujiwara = 2.0 * float(np.max(mags ** (1.0 / np.arange(1, n + 1))))
    radius = max(min(1.0 + float(np.max(abs_coeffs)), fujiwara), 1e-3)
    angles = 2.0 * np.pi * (np.arange(n) + 0.5) / n + 0.4
    z = radius * np.exp(1j * angles)
    tiny = np.finfo(np.float64).tiny
    noise = 4.0 * n * np.finfo(np.float64).eps
    done = np.zeros(n, dtype=bool)
    for _ in range(_MAX_ABERTH_ITERATIONS):
        p = _horner_many(coeffs, z)
        at_noise_floor = np.abs(p) <= noise * _horner_many(abs_coeffs, np.abs(z))
        dp = _horner_many(deriv, z)
        dp = np.where(dp == 0, tiny, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        neighbor_sum = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * neighbor_sum
        denom = np.where(denom == 0, tiny, denom)
        step = np.where(done | at_noise_floor, 0.0, w / denom)
        z = z - step
        done |= at_noise_floor | (np.abs(step) < TOL.aberth_step * (1.0 + np.abs(z)))
        if done.all():
            break
    else:
        raise ConvergenceError(
            f"root iteration did not converge within {_MAX_ABERTH_ITERATIONS} iterations "
            f"(degree {n})"
        )
    # Newton polish, kept only where it does not increase the residual
    for _ in range(2):
        p = _horner_many(coeffs, z)
        dp = _horner_many(deriv, z)
        dp = np.where(dp == 0, tiny, dp)
        cand = z - p / dp
        better = np.abs(_horner_many(coeffs, cand)) <= np.abs(p)
        z = np.where(better, cand, z)
    return _extended_polish(coeffs, deriv, z)


def _extended_polish(coeffs, deriv, z):
    """Newton steps with the residual evaluated in extended precision, which
    removes the double-precision Horner noise floor; the derivative stays in
    double (it only preconditions the step). No-op where long double is
    unavailable."""
    if _LONG_COMPLEX is None:
        return z
    wide = coeffs.astype(_LONG_COMPLEX)
    tiny = np.finfo(np.float64).tiny
    for _ in range(3):
        p = _horner_many(wide, z.astype(_LONG_COMPLEX)).astype(np.complex128)
        dp = _horner_many(deriv, z)
        dp = np.where(dp == 0, tiny, dp)
        step = p / dp
        z = z - step
        if np.all(np.abs(step) <= 4.0 * np.finfo(np.float64).eps * (1.0 + np.abs(z))):
            break
    return z


def roots(p: _Poly, real_tol: float | None = None) -> ZeroSet:
    """All complex roots of ``p`` with multiplicity, as a classified ZeroSet."""
    if p.degree < 1:
        raise PreconditionError("root finding needs degree >= 1")
    coeffs = np.asarray(p.coeffs, dtype=np.complex128)
    coeffs = coeffs / coeffs[-1]
    if p.degree == 1:
        zs = np.array([-coeffs[0]])
    else:
        zs = _aberth(coeffs)
    residual = np.abs(_horner_many(coeffs, zs))
    scale = (1.0 + float(np.max(np.abs(coeffs)))) * (1.0 + np.abs(zs)) ** p.degree
    if np.any(residual > 1e-8 * scale):
        raise ConvergenceError("root residuals above tolerance after polishing")
    return ZeroSet.classify(zs, real_tol=real_tol)


def is_strictly_interlacing(lams, mus) -> bool:
    """True iff lam_1 < mu_1 < lam_2 < ... < mu_{n-1} < lam_n with every gap
    exceeding ``interlacing * (lam_n - lam_1)``.

    Both inputs must be sorted ascending; ``mus`` must be one entry shorter.
    Configurations closer than the separation tolerance are rejected, never
    guessed.
    """
    lam = np.asarray(lams, dtype=np.float64)
    mu = np.asarray(mus, dtype=np.float64)
    if lam.ndim != 1 or mu.ndim != 1:
        raise PreconditionError("zero lists must be one-dimensional")
    if lam.size < 1:
        raise PreconditionError("need at least one zero in the longer list")
    if mu.size != lam.size - 1:
        raise PreconditionError(
            f"length mismatch: expected {lam.size - 1} interior zeros, got {mu.size}"
        )
    if lam.size == 1:
        return True
    merged = np.empty(2 * lam.size - 1)
    merged[0::2] = lam
    merged[1::2] = mu
    gap = TOL.interlacing * (lam[-1] - lam[0])
    return bool(np.all(np.diff(merged) > gap))


def poly_to_json(p: _Poly) -> dict:
    """JSON form ``{"coeffs": [[re, im], ...]}``, constant term first."""
    cs = np.asarray(p.coeffs, dtype=np.complex128)
    return {"coeffs": [[float(c.real), float(c.imag)] for c in cs]}


def poly_from_json(doc: dict) -> _Poly:
    """Inverse of :func:`poly_to_json`; returns RealPoly when all im parts vanish."""
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise PreconditionError('polynomial JSON must be {"coeffs": [[re, im], ...]}')
    pairs = doc["coeffs"]
    try:
        cs = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed coefficient list: {exc}") from None
    if np.all(cs.imag == 0.0):
        return RealPoly(cs.real)
    return ComplexPoly(cs)


def _fsum(values) -> float:
    """Compensated sum of a float array."""
    return math.fsum(map(float, values))
