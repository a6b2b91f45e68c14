"""k-idempotent algebras: E_iE_j = δ_ij E_i with ΣE_i = I.

These model quotients by finite point sets.  The central fact exercised here
is that the span of the E_i, with the concrete operator norm, is completely
isometric to a multiplier algebra with kernel K(x_i, x_j) = E_i E_j*: the
norm of Σ a_i ⊗ E_i equals the least C making the block matrix
[(C² − a_i ā_j)·E_iE_j*] positive semidefinite (blockwise with matrix
coefficients A_i for the complete isometry).
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import DimensionError, ParameterError
from .linalg import as_cmatrix, frob, hermitian_eig, op_norm
from .presentation import Presentation

__all__ = [
    "KIdempotentAlgebra",
    "AdmissibleTuple",
    "RejectedTuple",
    "random_idempotents",
    "algebra_norm",
    "multiplier_norm_via_kernel",
    "quotient_rep",
]


class KIdempotentAlgebra:
    """k commuting idempotents on ℂᵈ with pairwise products zero, summing to I."""

    def __init__(self, idempotents, tols: Tolerances = DEFAULT_TOLS, meta=None):
        self.idempotents = [as_cmatrix(e) for e in idempotents]
        if not self.idempotents:
            raise ParameterError("need at least one idempotent")
        d = self.idempotents[0].shape[0]
        for e in self.idempotents:
            if e.shape != (d, d):
                raise DimensionError("idempotents must be square of equal size")
        self.dim = d
        self.meta = meta or {}
        worst = self.relation_residual()
        if worst >= tols.idem_residual:
            raise ParameterError(
                f"idempotent relations violated: residual {worst:.3e}"
            )

    @property
    def k(self):
        return len(self.idempotents)

    def relation_residual(self) -> float:
        """Max Frobenius defect over E_iE_j − δ_ij E_i and ΣE_i − I."""
        es = self.idempotents
        worst = frob(sum(es) - np.eye(self.dim))
        for i, ei in enumerate(es):
            for j, ej in enumerate(es):
                target = ei if i == j else 0.0
                worst = max(worst, frob(ei @ ej - target))
        return worst


@dataclass
class AdmissibleTuple:
    """A commuting matrix tuple with every presentation constraint satisfied.

    margins[k] = 1 − ‖F_k(T)‖; provenance records how the tuple was built
    (node set, similarity seed) so searches stay reproducible.
    """

    matrices: list
    margins: list
    presentation: Presentation
    provenance: dict = field(default_factory=dict)


@dataclass
class RejectedTuple:
    """A candidate that violated at least one constraint; keeps the evidence."""

    margins: list
    violated: list
    provenance: dict = field(default_factory=dict)


def _partition(k, d, rng):
    """Random assignment of d coordinates into k nonempty groups."""
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=d - k)])
    rng.shuffle(labels)
    return labels


def random_idempotents(k: int, d: int, seed: int = 0, cond_cap: float = 20.0,
                       tols: Tolerances = DEFAULT_TOLS) -> KIdempotentAlgebra:
    """E_i = S P_i S⁻¹ for a random coordinate partition and similarity S.

    S is rejection-sampled from complex Gaussians until cond(S) ≤ cond_cap,
    so the algebra relations hold exactly up to float error by construction.
    """
    if k > d:
        raise ParameterError(f"need k ≤ d, got k={k}, d={d}")
    if k < 1:
        raise ParameterError("need k ≥ 1")
    rng = np.random.default_rng(seed)
    labels = _partition(k, d, rng)
    for _ in range(10000):
        s = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        sv = np.linalg.svd(s, compute_uv=False)
        cond = sv[0] / sv[-1]
        if cond <= cond_cap:
            break
    else:
        raise ParameterError(f"could not sample cond(S) ≤ {cond_cap}")
    s_inv = np.linalg.inv(s)
    es = []
    for i in range(k):
        p = np.diag((labels == i).astype(np.complex128))
        es.append(s @ p @ s_inv)
    meta = {"seed": seed, "cond": float(cond), "labels": labels.tolist()}
    return KIdempotentAlgebra(es, tols, meta=meta)


def _coerce_coeffs(coeffs, k):
    mats = [as_cmatrix(a) for a in coeffs]
    if len(mats) != k:
        raise DimensionError(f"{len(mats)} coefficients for {k} idempotents")
    p = mats[0].shape
    if p[0] != p[1]:
        raise DimensionError("coefficients must be square")
    for a in mats:
        if a.shape != p:
            raise DimensionError("coefficients must share one shape")
    return mats


def algebra_norm(alg: KIdempotentAlgebra, coeffs) -> float:
    """Concrete operator norm of Σ A_i ⊗ E_i on ℂᵖ⊗ℂᵈ."""
    mats = _coerce_coeffs(coeffs, alg.k)
    total = sum(np.kron(a, e) for a, e in zip(mats, alg.idempotents))
    return op_norm(total)


def multiplier_norm_via_kernel(alg: KIdempotentAlgebra, coeffs,
                               tol: float = None,
                               tols: Tolerances = DEFAULT_TOLS) -> float:
    """Least C with [(C²I − A_iA_j*) ⊗ E_iE_j*] ⪰ 0, by bisection to tol.

    Scalar coefficients give the isometric statement; p×p coefficients the
    completely isometric one.  PSD is tested with slack −1e-10·C².
    """
    tol = tols.kernel_bisect if tol is None else float(tol)
    mats = _coerce_coeffs(coeffs, alg.k)
    p = mats[0].shape[0]
    k, d = alg.k, alg.dim
    kernel = [[ei @ ej.conj().T for ej in alg.idempotents] for ei in alg.idempotents]
    eye_p = np.eye(p)

    def is_psd(c):
        rows = []
        for i in range(k):
            row = [
                np.kron(c * c * eye_p - mats[i] @ mats[j].conj().T, kernel[i][j])
                for j in range(k)
            ]
            rows.append(np.concatenate(row, axis=1))
        big = np.concatenate(rows, axis=0)
        lam = hermitian_eig(big, tols).eigenvalues
        return lam[0] >= -tols.pick_eig * max(c * c, 1e-300)

    hi = max(op_norm(a) for a in mats)
    if hi == 0.0:
        return 0.0
    lo = 0.0
    for _ in range(80):
        if is_psd(hi):
            break
        lo = hi
        hi *= 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_psd(mid):
            hi = mid
        else:
            lo = mid
    return hi


def quotient_rep(presentation: Presentation, points, alg: KIdempotentAlgebra,
                 tols: Tolerances = DEFAULT_TOLS):
    """Tuple T_j = Σ_i y_{i,j} E_i with margins 1 − ‖F_k(T)‖ for every k.

    Returns an AdmissibleTuple when all margins clear the slack, otherwise a
    RejectedTuple carrying the violated margins.  Non-orthogonal idempotents
    can and do get rejected near the boundary — that is the filtering signal
    the representation search relies on.
    """
    pts = [np.asarray(p, dtype=np.complex128).reshape(-1) for p in points]
    if len(pts) != alg.k:
        raise ParameterError(f"|Y| = {len(pts)} but the algebra has k = {alg.k}")
    n = presentation.dim
    for p in pts:
        if p.size != n:
            raise DimensionError(f"point has {p.size} coordinates, expected {n}")

    ts = []
    for j in range(n):
        t = sum(pts[i][j] * alg.idempotents[i] for i in range(alg.k))
        ts.append(t)

    # F_k(Σ y_i E_i) = Σ F_k(y_i) ⊗ E_i: evaluate through the homomorphism
    # rather than the generic calculus — exact for idempotent tuples and
    # avoids inverting den(T) for rational entries.
    margins = []
    for f in presentation.functions:
        ft = sum(
            np.kron(f.eval(pts[i], tols), alg.idempotents[i]) for i in range(alg.k)
        )
        margins.append(1.0 - op_norm(ft))

    prov = {"points": [p.copy() for p in pts], "algebra_meta": dict(alg.meta)}
    violated = [k for k, m in enumerate(margins) if m < tols.margin_slack]
    if violated:
        return RejectedTuple(margins=margins, violated=violated, provenance=prov)
    return AdmissibleTuple(matrices=ts, margins=margins,
                           presentation=presentation, provenance=prov)
