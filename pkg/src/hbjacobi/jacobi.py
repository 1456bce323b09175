"""Jacobi matrices: characteristic-polynomial recurrence, spectra, the inverse
eigenvalue reconstruction from two interlacing spectra, and Lanczos reduction
of Hermitian matrices to Jacobi form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NumericalError, PreconditionError
from .polynomials import RealPoly, is_strictly_interlacing
from .tolerances import TOL

__all__ = [
    "JacobiMatrix",
    "HermitianMatrix",
    "LanczosResult",
    "char_polys",
    "eigen",
    "spectral_weights",
    "reconstruct",
    "lanczos_reduce",
]

_MAX_RECONSTRUCT_SIZE = 50


@dataclass(frozen=True)
class JacobiMatrix:
    """Real symmetric tridiagonal matrix with strictly positive off-diagonal.

    ``b`` is the diagonal (length n), ``a`` the off-diagonal (length n-1).
    """

    b: tuple
    a: tuple

    def __post_init__(self):
        b = tuple(float(x) for x in self.b)
        a = tuple(float(x) for x in self.a)
        if len(b) < 1:
            raise PreconditionError("a Jacobi matrix needs at least one diagonal entry")
        if len(a) != len(b) - 1:
            raise PreconditionError(
                f"off-diagonal length {len(a)} must be {len(b) - 1} for size {len(b)}"
            )
        if not all(math.isfinite(x) for x in b + a):
            raise PreconditionError("entries must be finite")
        if any(x <= 0 for x in a):
            raise PreconditionError("off-diagonal entries must be strictly positive")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.b)

    def dense(self) -> np.ndarray:
        m = np.diag(np.asarray(self.b, dtype=np.float64))
        if self.a:
            off = np.asarray(self.a, dtype=np.float64)
            m += np.diag(off, 1) + np.diag(off, -1)
        return m

    def truncated(self, j: int = 1) -> "JacobiMatrix":
        """Remove the first j rows and columns."""
        if not 0 <= j < self.n:
            raise PreconditionError(f"truncation index must be in [0, {self.n - 1}]")
        return JacobiMatrix(self.b[j:], self.a[j:])

    def as_dict(self) -> dict:
        return {"b": list(self.b), "a": list(self.a)}

    @classmethod
    def from_dict(cls, doc: dict) -> "JacobiMatrix":
        if not isinstance(doc, dict) or "b" not in doc or "a" not in doc:
            raise PreconditionError('Jacobi JSON must be {"b": [...], "a": [...]}')
        return cls(tuple(doc["b"]), tuple(doc["a"]))


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense complex matrix validated to equal its conjugate transpose."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise PreconditionError("entries must form a nonempty square matrix")
        if not np.all(np.isfinite(m)):
            raise PreconditionError("entries must be finite")
        scale = max(1.0, float(np.max(np.abs(m))))
        if float(np.max(np.abs(m - m.conj().T))) > TOL.hermitian * scale:
            raise PreconditionError("matrix is not Hermitian within tolerance")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def as_dict(self) -> dict:
        return {
            "entries": [[[float(v.real), float(v.imag)] for v in row] for row in self.entries]
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "HermitianMatrix":
        if not isinstance(doc, dict) or "entries" not in doc:
            raise PreconditionError('Hermitian JSON must be {"entries": [[[re, im], ...], ...]}')
        try:
            m = np.array(
                [[complex(re, im) for re, im in row] for row in doc["entries"]],
                dtype=np.complex128,
            )
        except (TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed entry list: {exc}") from None
        return cls(m)


@dataclass(frozen=True)
class LanczosResult:
    jacobi: JacobiMatrix
    basis: np.ndarray  # k x n, orthonormal rows, basis @ v proportional to e_1
    k: int


def char_polys(J: JacobiMatrix) -> list:
    """Characteristic polynomials [p_0, ..., p_n] of the nested truncations.

    p_j belongs to the matrix with the first j rows/columns removed; they obey
    the backward recurrence p_{j-1} = (z - b_j) p_j - a_j^2 p_{j+1} with
    p_n = 1. All are monic with deg p_j = n - j.
    """
    n = J.n
    polys = [None] * (n + 1)
    polys[n] = RealPoly([1.0])
    polys[n - 1] = RealPoly([-J.b[n - 1], 1.0])
    for j in range(n - 1, 0, -1):
        zp = np.convolve([-J.b[j - 1], 1.0], polys[j].coeffs)
        polys[j - 1] = RealPoly(zp) - (J.a[j - 1] ** 2) * polys[j + 1]
    return polys


def eigen(J: JacobiMatrix) -> np.ndarray:
    """All eigenvalues, sorted ascending (real and simple since a_j > 0)."""
    b = np.asarray(J.b, dtype=np.float64)
    if J.n == 1:
        return b.copy()
    try:
        vals = scipy.linalg.eigvalsh_tridiagonal(b, np.asarray(J.a, dtype=np.float64))
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from None
    return np.sort(vals)


def spectral_weights(lams, mus) -> np.ndarray:
    """Masses w_j of the discrete spectral measure at the eigenvalues.

    w_j = prod_k (lam_j - mu_k) / prod_{k != j} (lam_j - lam_k); strictly
    positive with unit sum exactly when the two sets strictly interlace.
    """
    lam = np.asarray(lams, dtype=np.float64)
    mu = np.asarray(mus, dtype=np.float64)
    diff_lam = lam[:, None] - lam[None, :]
    np.fill_diagonal(diff_lam, 1.0)
    numer = np.prod(lam[:, None] - mu[None, :], axis=1) if mu.size else np.ones(lam.size)
    return numer / np.prod(diff_lam, axis=1)


def _wdot(w, f, g) -> float:
    return math.fsum(map(float, w * f * g))


def reconstruct(lams, mus) -> JacobiMatrix:
    """The unique Jacobi matrix whose spectrum is ``lams`` and whose first
    truncation has spectrum ``mus``.

    Runs the discrete Stieltjes procedure against the measure with masses
    w_j at the lam_j: the three-term recurrence coefficients of the
    orthonormal polynomials of that measure are exactly (b, a). Inner products
    use compensated summation and every new vector is re-orthogonalized
    against the full basis.
    """
    lam = np.sort(np.asarray(lams, dtype=np.float64))
    mu = np.sort(np.asarray(mus, dtype=np.float64))
    n = lam.size
    if n > _MAX_RECONSTRUCT_SIZE:
        raise PreconditionError(f"reconstruction is capped at size {_MAX_RECONSTRUCT_SIZE}")
    if not is_strictly_interlacing(lam, mu):
        raise PreconditionError("the two spectra must strictly interlace")
    w = spectral_weights(lam, mu)
    if np.any(w <= 0):
        raise PreconditionError("weight positivity failure: inconsistent spectral data")

    tiny = 1e-14 * max(1.0, float(np.max(np.abs(lam))))
    cur = np.ones(n) / math.sqrt(math.fsum(map(float, w)))
    prev = np.zeros(n)
    basis = [cur]
    bs, offs = [], []
    for k in range(n):
        x_cur = lam * cur
        bk = _wdot(w, x_cur, cur)
        bs.append(bk)
        if k == n - 1:
            break
        resid = x_cur - bk * cur - (offs[-1] if offs else 0.0) * prev
        for v in basis:
            resid = resid - _wdot(w, resid, v) * v
        ak = math.sqrt(_wdot(w, resid, resid))
        if ak <= tiny:
            raise NumericalError("three-term recurrence broke down; spectra too close")
        offs.append(ak)
        prev, cur = cur, resid / ak
        basis.append(cur)
    return JacobiMatrix(tuple(bs), tuple(offs))


def lanczos_reduce(H, v) -> LanczosResult:
    """Reduce a Hermitian matrix to Jacobi form on the Krylov span of v.

    Returns (J, S, k) with k = dim span{H^j v}, S a k x n matrix with
    orthonormal rows, S v proportional to e_1, and S H S* = J. The iteration
    stops early (k < n) when the next off-diagonal candidate falls below the
    breakdown threshold, which happens exactly when v is not cyclic; early
    termination is a valid result, not an error.
    """
    if not isinstance(H, HermitianMatrix):
        H = HermitianMatrix(np.asarray(H))
    m = H.entries
    n = H.n
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != n:
        raise PreconditionError(f"vector length {vec.shape[0]} does not match matrix size {n}")
    norm_v = np.linalg.norm(vec)
    if norm_v == 0:
        raise PreconditionError("the starting vector must be nonzero")
    breakdown = TOL.lanczos_breakdown * max(np.linalg.norm(m), np.finfo(np.float64).tiny)

    q = vec / norm_v
    columns = [q]
    bs, offs = [], []
    beta_prev = 0.0
    q_prev = np.zeros(n, dtype=np.complex128)
    for _ in range(n):
        u = m @ q
        alpha = float(np.vdot(q, u).real)
        bs.append(alpha)
        r = u - alpha * q - beta_prev * q_prev
        qmat = np.vstack(columns)
        for _ in range(2):  # full reorthogonalization, twice is enough
            r = r - (qmat.conj() @ r) @ qmat
        beta = float(np.linalg.norm(r))
        if beta <= breakdown or len(bs) == n:
            break
        offs.append(beta)
        q_prev, q = q, r / beta
        beta_prev = beta
        columns.append(q)
    k = len(bs)
    basis = np.conj(np.vstack(columns))
    return LanczosResult(jacobi=JacobiMatrix(tuple(bs), tuple(offs)), basis=basis, k=k)
