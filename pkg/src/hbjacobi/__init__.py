"""Hermite-Biehler root classification and inverse spectral problems for
non-Hermitian corner perturbations of finite Jacobi matrices."""

from .errors import ConvergenceError, HBJacobiError, NumericalError, PreconditionError
from .hodograph import (
    ConfigReport,
    Localization,
    PhaseIncrement,
    PhaseSample,
    Verdict,
    arg_mod_pi,
    arg_sum,
    classify_config,
    localization,
    phase,
    phase_increment,
    phase_trace,
    write_hodograph_csv,
)
from .jacobi import (
    HermitianMatrix,
    JacobiMatrix,
    LanczosResult,
    char_polys,
    eigen,
    lanczos_reduce,
    reconstruct,
    spectral_weights,
)
from .perturbations import (
    PerturbationSpec,
    PerturbedMatrix,
    build,
    dense_char_poly,
    inverse_additive,
    inverse_multiplicative,
    inverse_rank2,
    pencil_alpha,
    perturbed_char_poly,
    rank2_shift,
    spectrum,
)
from .polynomials import (
    ComplexPoly,
    RealPoly,
    ZeroSet,
    from_roots,
    is_strictly_interlacing,
    poly_from_json,
    poly_to_json,
    roots,
)
from .tolerances import TOL, set_classification_tolerance
from .transforms import (
    ClassicalSplit,
    GeneralizedSplit,
    HBReport,
    PencilSplit,
    alpha_from_k,
    classical_combine,
    classical_split,
    generalized_combine,
    generalized_split,
    hb_verify,
    pencil_combine,
    pencil_split,
)

__version__ = "0.1.0"
