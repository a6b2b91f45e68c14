"""Interpolation feasibility, quotient norms and matrix lower bounds on
analytically presented domains in ℂᴺ.

Upper bounds come from positive-semidefinite factorization certificates over
finite node sets (independently re-verifiable); lower bounds from explicit
admissible matrix tuples.  See the README for the CLI and file formats.
"""

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    AdmissibilityError,
    AgpickError,
    CommutativityError,
    DimensionError,
    DomainError,
    DuplicatePointError,
    EvaluationError,
    HermitianError,
    InconclusiveError,
    ParameterError,
    SchemaError,
    SpectrumError,
)
from .idempotents import (
    AdmissibleTuple,
    KIdempotentAlgebra,
    RejectedTuple,
    algebra_norm,
    multiplier_norm_via_kernel,
    quotient_rep,
    random_idempotents,
)
from .linalg import HermEig, hermitian_eig, op_norm, psd_project
from .norms import (
    NormResult,
    quotient_norm,
    sample_interior,
    schur_agler_norm_estimate,
    sup_norm_lower,
)
from .presentation import (
    FunctionMatrix,
    MultiPoly,
    Presentation,
    RationalFn,
    eval_fn,
    eval_on_tuple,
    in_domain,
    preset,
)
from .repsearch import evaluate_admissible, lower_bound
from .sdp import (
    Certificate,
    DeltaBlocks,
    InterpolationProblem,
    SolveResult,
    build_lmi,
    classical_pick_test,
    solve_feasibility,
    verify_certificate,
)

__version__ = "0.1.0"
