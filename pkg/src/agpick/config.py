"""Central tolerance record.

Every numerical threshold used anywhere in the package lives here, so a
single object documents the float-error budget end to end.  Functions take
an optional ``tols`` argument defaulting to :data:`DEFAULT_TOLS`; certificates
are always re-verified, so these are working tolerances, not trust anchors.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # linear algebra kernel
    herm_input: float = 1e-9       # ‖A − A*‖_F ≤ herm_input·(1 + ‖A‖_F)
    eig_recon: float = 1e-10       # eigendecomposition reconstruction budget
    psd_floor: float = -1e-12      # min eigenvalue allowed after PSD projection

    # evaluation of presentations
    pole: float = 1e-14            # |den(z)| must exceed this
    commutator: float = 1e-10      # Frobenius norm of [T_i, T_j]
    den_sv: float = 1e-10          # min singular value of den(T)

    # feasibility solver
    feas_residual: float = 1e-7    # tol_feas: max block residual for Feasible
    stall: float = 1e-9            # tol_stall: required improvement per window
    stall_window: int = 500
    max_iter: int = 20000
    cert_min_eig: float = -1e-8    # eigenvalue slack allowed on PSD blocks

    # independent verification
    verify_residual: float = 1e-6

    # classical Pick oracle: min eig ≥ -pick_eig·t²
    pick_eig: float = 1e-10

    # idempotent algebras / admissible tuples
    idem_residual: float = 1e-9    # ‖E_iE_j − δ_ij E_i‖_F and ‖ΣE_i − I‖_F
    margin_slack: float = -1e-9    # admissible iff every margin ≥ this

    # norm computation
    norm_tol: float = 1e-4         # default bisection width
    kernel_bisect: float = 1e-6    # bisection width for the kernel criterion
    sample_margin: float = 0.02    # interior-margin floor for samplers


DEFAULT_TOLS = Tolerances()
