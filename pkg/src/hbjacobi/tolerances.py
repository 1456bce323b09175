"""Numerical tolerances used across the library.

Every tolerance lives on the mutable singleton ``TOL`` so that the CLI's
``--tol`` flag can override the classification tolerances globally. Library
code reads the fields at call time.
"""

from dataclasses import dataclass


@dataclass
class Tolerances:
    # |arg_sum - Arg(alpha)| <= equality * n  is verdict "Equal"; the same
    # band detects the boundary case in zero localization.
    equality: float = 1e-8
    # |Im z| <= real_axis * (1 + |z|)  classifies z as lying on the real axis.
    real_axis: float = 1e-10
    # strict interlacing requires every gap > interlacing * (lam_n - lam_1).
    interlacing: float = 1e-9
    # Aberth iteration stops when every correction < aberth_step * (1 + |z|).
    aberth_step: float = 1e-13
    # symbolic vs numeric phase increment must agree this closely.
    increment: float = 1e-6
    # |r(xi)| <= pencil_residual * (1 + |xi|)**n  in the Equal split branch.
    pencil_residual: float = 1e-8
    # |z - xi| <= simple_zero * (1 + max|z_j|) detects the deflatable zero.
    simple_zero: float = 1e-8
    # Lanczos stops when the next off-diagonal <= lanczos_breakdown * ||H||.
    lanczos_breakdown: float = 1e-12
    # Hermitian symmetry check: max|H - H*| <= hermitian * max(1, max|H|).
    hermitian: float = 1e-12


TOL = Tolerances()


def set_classification_tolerance(value: float) -> None:
    """Override the tolerances that decide verdicts and zero deflation."""
    if not value > 0:
        raise ValueError("tolerance must be positive")
    TOL.equality = value
    TOL.simple_zero = value
    TOL.pencil_residual = value
