"""The three corner perturbations of a Jacobi matrix and their direct and
inverse spectral problems.

Additive: the (1,1)-entry gains +i*l; the characteristic polynomial is
p_0 - i*l*p_1. Multiplicative: the first column is scaled by 1+i*k, so the
(1,1)-entry becomes b_1*(1+i*k) and the (2,1)-entry a_1*(1+i*k); the
characteristic polynomial is (1+i*k)*p_0 - i*k*z*p_1. Rank-two: the
(1,1)-entry gains +i*l and the (2,1)-entry +i*m; the characteristic
polynomial is the shifted pencil alpha*p_0 + (1-alpha)*(z-xi)*p_1 with
alpha = 1 + i*m/a_1 and xi = b_1 - l*a_1/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, PreconditionError
from .hodograph import Verdict, arg_mod_pi, arg_sum
from .jacobi import JacobiMatrix, reconstruct
from .jacobi import char_polys as _char_polys
from .polynomials import ComplexPoly, RealPoly, ZeroSet, from_roots, is_strictly_interlacing, roots
from .tolerances import TOL
from .transforms import classical_split, generalized_split, pencil_split

__all__ = [
    "PerturbationSpec",
    "PerturbedMatrix",
    "build",
    "perturbed_char_poly",
    "spectrum",
    "dense_char_poly",
    "inverse_additive",
    "inverse_multiplicative",
    "inverse_rank2",
]

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"
RANK2 = "rank2"


@dataclass(frozen=True)
class PerturbationSpec:
    """Which corner perturbation to apply: additive (parameter l), rank-one
    multiplicative (k > 0), or rank-two additive (l real, m > 0)."""

    kind: str
    l: float | None = None
    k: float | None = None
    m: float | None = None

    def __post_init__(self):
        if self.kind == ADDITIVE:
            if self.l is None or not math.isfinite(self.l):
                raise PreconditionError("additive perturbation needs a finite l")
        elif self.kind == MULTIPLICATIVE:
            if self.k is None or not self.k > 0:
                raise PreconditionError("multiplicative perturbation needs k > 0")
        elif self.kind == RANK2:
            if self.l is None or not math.isfinite(self.l):
                raise PreconditionError("rank-two perturbation needs a finite l")
            if self.m is None or not self.m > 0:
                raise PreconditionError("rank-two perturbation needs m > 0")
        else:
            raise PreconditionError(f"unknown perturbation kind {self.kind!r}")

    @classmethod
    def additive(cls, l: float) -> "PerturbationSpec":
        return cls(kind=ADDITIVE, l=float(l))

    @classmethod
    def multiplicative(cls, k: float) -> "PerturbationSpec":
        return cls(kind=MULTIPLICATIVE, k=float(k))

    @classmethod
    def rank2(cls, l: float, m: float) -> "PerturbationSpec":
        return cls(kind=RANK2, l=float(l), m=float(m))

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in ("l", "k", "m"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "PerturbationSpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise PreconditionError('perturbation JSON must carry a "kind" field')
        known = {k: doc[k] for k in ("l", "k", "m") if k in doc}
        return cls(kind=doc["kind"], **known)


@dataclass(frozen=True)
class PerturbedMatrix:
    base: JacobiMatrix
    spec: PerturbationSpec
    entries: np.ndarray = field(repr=False)


def _check_size(J: JacobiMatrix, spec: PerturbationSpec):
    if spec.kind == RANK2 and J.n < 2:
        raise PreconditionError("rank-two perturbation needs a matrix of size >= 2")


def build(J: JacobiMatrix, spec: PerturbationSpec) -> PerturbedMatrix:
    """Materialize the perturbed matrix."""
    _check_size(J, spec)
    m = J.dense().astype(np.complex128)
    if spec.kind == ADDITIVE:
        m[0, 0] += 1j * spec.l
    elif spec.kind == MULTIPLICATIVE:
        m[0, 0] = J.b[0] * (1 + 1j * spec.k)
        if J.n > 1:
            m[1, 0] = J.a[0] * (1 + 1j * spec.k)
    else:
        m[0, 0] += 1j * spec.l
        m[1, 0] += 1j * spec.m
    m.flags.writeable = False
    return PerturbedMatrix(base=J, spec=spec, entries=m)


def rank2_shift(J: JacobiMatrix, spec: PerturbationSpec) -> float:
    """The distinguished real point xi = b_1 - l*a_1/m of a rank-two spec."""
    if spec.kind != RANK2:
        raise PreconditionError("shift point is defined for rank-two perturbations only")
    _check_size(J, spec)
    return J.b[0] - spec.l * J.a[0] / spec.m


def pencil_alpha(J: JacobiMatrix, spec: PerturbationSpec) -> complex:
    """The pencil parameter of a multiplicative or rank-two perturbation."""
    if spec.kind == MULTIPLICATIVE:
        return complex(1.0, spec.k)
    if spec.kind == RANK2:
        _check_size(J, spec)
        return complex(1.0, spec.m / J.a[0])
    raise PreconditionError("the additive perturbation has no pencil parameter")


def perturbed_char_poly(J: JacobiMatrix, spec: PerturbationSpec) -> ComplexPoly:
    """Monic characteristic polynomial assembled from p_0 and p_1."""
    _check_size(J, spec)
    polys = _char_polys(J)
    p0, p1 = polys[0], polys[1]
    n = J.n
    if spec.kind == ADDITIVE:
        return p0 + (-1j * spec.l) * p1

    if spec.kind == MULTIPLICATIVE:
        alpha = complex(1.0, spec.k)
        partner = np.zeros(n + 1, dtype=np.complex128)
        partner[1 : p1.degree + 2] = p1.coeffs  # z * p_1
        xi = 0.0
    else:
        alpha = pencil_alpha(J, spec)
        xi = rank2_shift(J, spec)
        partner = np.zeros(n + 1, dtype=np.complex128)
        conv = np.convolve([-xi, 1.0], p1.coeffs)  # (z - xi) * p_1
        partner[: len(conv)] = conv
    cs = alpha * np.asarray(p0.coeffs, dtype=np.complex128) + (1 - alpha) * partner
    cs[-1] = 1.0
    return ComplexPoly(cs)


def spectrum(J: JacobiMatrix, spec: PerturbationSpec) -> ZeroSet:
    """Zeros of the perturbed characteristic polynomial."""
    return roots(perturbed_char_poly(J, spec))


def dense_char_poly(entries: np.ndarray) -> ComplexPoly:
    """Characteristic polynomial of a dense matrix by the trace recursion
    (no eigensolve, no tridiagonal recurrence); used for cross-validation."""
    m = np.asarray(entries, dtype=np.complex128)
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    bmat = m.copy()
    for k in range(1, n + 1):
        ak = -np.trace(bmat) / k
        coeffs[n - k] = ak
        if k < n:
            bmat = m @ (bmat + ak * np.eye(n))
    return ComplexPoly(coeffs)


def _simple_zero_tolerance(shifted: ZeroSet) -> float:
    return TOL.simple_zero * (1.0 + shifted.max_abs)


def inverse_additive(zeros: ZeroSet):
    """Recover (J, l) from a spectrum lying strictly in the upper half-plane."""
    if zeros.n_real or zeros.n_minus:
        raise PreconditionError(
            "additive inverse problem requires every zero strictly in the upper half-plane"
        )
    split = classical_split(from_roots(zeros.zeros))
    if split.is_hermitian or not split.l > 0 or split.q.degree != split.p.degree - 1:
        raise NumericalError("classical split degenerated on upper half-plane input")
    lam = _sorted_real_zeros(split.p, "real part")
    mu = _sorted_real_zeros(split.q, "imaginary part")
    if not is_strictly_interlacing(lam, mu):
        raise NumericalError("interlacing verification failure on the split zeros")
    return reconstruct(lam, mu), split.l


def _sorted_real_zeros(p: RealPoly, label: str):
    if p.degree == 0:
        return np.empty(0)
    zs = roots(p)
    if zs.n_real != len(zs):
        raise NumericalError(f"zeros of the {label} polynomial are not all real")
    return np.sort(np.asarray([z.real for z in zs]))


def _deflate_at(zeros: ZeroSet, xi: float):
    """Split off the unique zero within tolerance of xi; error when the count
    is not exactly one."""
    tol = TOL.simple_zero * (1.0 + max(abs(z - xi) for z in zeros))
    at = [z for z in zeros if abs(z - xi) <= tol]
    rest = [z for z in zeros if abs(z - xi) > tol]
    if len(at) != 1:
        raise PreconditionError(
            f"expected exactly one zero at {xi:.12g} within tolerance, found {len(at)}"
        )
    return ZeroSet.classify(rest)


def inverse_multiplicative(zeros: ZeroSet, k: float | None = None):
    """Recover (J, k) from the spectrum of a multiplicative perturbation.

    Regular path (k omitted): requires no real zeros and an argument sum in
    (0, pi/2); k = tan(arg_sum) and the matrix is nonsingular. Singular path
    (k given): requires exactly one zero at the origin; the deflated zeros
    must satisfy the strict bound arg_sum < arctan(k). Without k the singular
    problem has infinitely many solutions, so k is mandatory there.
    """
    if k is None:
        if zeros.n_real:
            raise PreconditionError(
                "regular multiplicative inverse requires no real zeros; "
                "a singular matrix (zero eigenvalue) needs an explicit k"
            )
        total = arg_sum(zeros)
        if not 0.0 < total < math.pi / 2:
            raise PreconditionError(
                f"argument sum {total:.12g} outside (0, pi/2); no multiplicative "
                "perturbation of a Jacobi matrix has this spectrum"
            )
        k = math.tan(total)
        gs = generalized_split(from_roots(zeros.zeros), complex(1.0, k), 0.0)
        lam = np.asarray(gs.p_zeros)
        mu = np.asarray(gs.partner_zeros)
        if gs.warning or lam.size != len(zeros):
            raise NumericalError(gs.warning or "split zeros incomplete")
        if np.any(np.abs(lam) <= _simple_zero_tolerance(zeros)):
            raise PreconditionError(
                "reconstructed matrix would be singular; pass k explicitly "
                "to solve the singular problem"
            )
        return reconstruct(lam, mu), k

    if not k > 0:
        raise PreconditionError("k must be positive")
    rest = _deflate_at(zeros, 0.0)
    if rest.n_real:
        raise PreconditionError("all zeros besides the simple one at 0 must be non-real")
    if len(rest) and not arg_sum(rest) < math.atan(k):
        raise PreconditionError(
            f"argument sum {arg_sum(rest):.12g} must be strictly below "
            f"arctan(k) = {math.atan(k):.12g}"
        )
    split = pencil_split(from_roots(rest.zeros), complex(1.0, k))
    lam_hat = _sorted_real_zeros(split.p, "deflated spectrum")
    mu = _sorted_real_zeros(split.r, "truncation spectrum")
    lam = np.sort(np.append(lam_hat, 0.0))
    if not is_strictly_interlacing(lam, mu):
        raise NumericalError("interlacing verification failure in the singular path")
    return reconstruct(lam, mu), k


def inverse_rank2(zeros: ZeroSet, xi: float, A: float | None = None):
    """Recover (J, l, m) from the spectrum of a rank-two perturbation with
    prescribed shift point xi.

    Regular path (A omitted): requires no zero at xi and a shifted argument
    sum in (0, pi/2); that sum is the angle of the pencil parameter, giving
    m = a_1 * tan(angle) and l = tan(angle) * (b_1 - xi). Singular path
    (angle A given, in (0, pi/2)): requires exactly one zero at xi; the
    remaining zeros must satisfy the strict bound sum < A. Without A the
    singular problem is not unique.
    """
    xi = float(xi)
    if len(zeros) < 2:
        raise PreconditionError("rank-two inverse needs at least two zeros")
    if A is None:
        shifted = zeros.shifted(xi)
        if shifted.n_real:
            raise PreconditionError(
                "regular rank-two inverse requires no zero at or near the shift point"
            )
        angle = arg_sum(shifted)
        if not 0.0 < angle < math.pi / 2:
            raise PreconditionError(
                f"shifted argument sum {angle:.12g} outside (0, pi/2); no rank-two "
                "perturbation with this shift point has this spectrum"
            )
        alpha = complex(1.0, math.tan(angle))
        gs = generalized_split(from_roots(zeros.zeros), alpha, xi)
        lam = np.asarray(gs.p_zeros)
        mu = np.asarray(gs.partner_zeros)
        if gs.warning or lam.size != len(zeros):
            raise NumericalError(gs.warning or "split zeros incomplete")
        if np.any(np.abs(lam - xi) <= _simple_zero_tolerance(shifted)):
            raise PreconditionError(
                "xi is an eigenvalue of the reconstructed matrix; pass the "
                "pencil angle A explicitly to solve the singular problem"
            )
        J = reconstruct(lam, mu)
    else:
        if not 0.0 < A < math.pi / 2:
            raise PreconditionError("the pencil angle A must lie in (0, pi/2)")
        angle = float(A)
        rest = _deflate_at(zeros, xi)
        shifted_rest = rest.shifted(xi)
        if shifted_rest.n_real:
            raise PreconditionError("all zeros besides the simple one at xi must be non-real")
        if len(rest) and not arg_sum(shifted_rest) < angle:
            raise PreconditionError(
                f"shifted argument sum {arg_sum(shifted_rest):.12g} must be "
                f"strictly below A = {angle:.12g}"
            )
        split = pencil_split(from_roots(rest.zeros), complex(1.0, math.tan(angle)))
        lam_hat = _sorted_real_zeros(split.p, "deflated spectrum")
        mu = _sorted_real_zeros(split.r, "truncation spectrum")
        lam = np.sort(np.append(lam_hat, xi))
        if not is_strictly_interlacing(lam, mu):
            raise NumericalError("interlacing verification failure in the singular path")
        J = reconstruct(lam, mu)
    m = J.a[0] * math.tan(angle)
    l = math.tan(angle) * (J.b[0] - xi)
    return J, l, m
