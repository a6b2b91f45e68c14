"""Certified lower bounds on the global norm from finite-dimensional tuples.

Every tuple searched here has the quotient-representation form T_j = Σ y_i E_i
for idempotents E_i = S P_i S⁻¹, so its joint spectrum is exactly the node
set Y by construction.  Candidates violating any contraction margin are
rejected outright — a penalized iterate could leak an inadmissible value,
and the whole point is that the returned number is ≤ the true norm.

The search itself is derivative-free: random similarity perturbations with
geometric step decay, restarted with nested seeds so that adding restarts
never changes earlier trajectories.
"""

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import AdmissibilityError, ParameterError
from .idempotents import (
    AdmissibleTuple,
    KIdempotentAlgebra,
    RejectedTuple,
    quotient_rep,
)
from .linalg import op_norm
from .norms import as_function_matrix
from .presentation import Presentation, check_commuting, eval_on_tuple

__all__ = ["AdmissibleTuple", "RejectedTuple", "lower_bound", "evaluate_admissible"]


def evaluate_admissible(f, t: AdmissibleTuple, tols: Tolerances = DEFAULT_TOLS):
    """‖f(T)‖ for an admissible tuple, with margins recomputed fresh.

    Raises AdmissibilityError (naming the constraint) if the tuple no longer
    clears the commutation or margin checks.
    """
    fm = as_function_matrix(f)
    mats = check_commuting(t.matrices, tols)
    pres = t.presentation
    margins = [
        1.0 - op_norm(fk.eval_tuple(mats, tols)) for fk in pres.functions
    ]
    for k, m in enumerate(margins):
        if m < tols.margin_slack:
            raise AdmissibilityError(
                f"constraint {k} violated: margin {m:.3e} < {tols.margin_slack:.0e}"
            )
    value = op_norm(eval_on_tuple(fm, mats, tols))
    return {"value": value, "margins": margins}


def _orthogonal_algebra(k, tols):
    es = [np.diag((np.arange(k) == i).astype(np.complex128)) for i in range(k)]
    return KIdempotentAlgebra(es, tols, meta={"seed": None, "cond": 1.0})


def lower_bound(f, presentation: Presentation, points, restarts: int = 32,
                steps: int = 200, seed: int = 0, step_init: float = 0.4,
                step_decay: float = 0.97, d_cap: int = 6,
                tols: Tolerances = DEFAULT_TOLS):
    """Best admissible value of ‖f(T)‖ over searched quotient-rep tuples.

    Starts from orthogonal idempotents (always admissible; realizes the
    pointwise sup max_i ‖f(y_i)‖) and hill-climbs over similarities.  The
    returned value never exceeds the true norm by more than float slack,
    because the reported tuple itself is re-checked admissible.
    """
    fm = as_function_matrix(f)
    pts = [np.asarray(p, dtype=np.complex128).reshape(-1) for p in points]
    k = len(pts)
    if k == 0:
        raise ParameterError("need at least one node")
    if k > d_cap:
        raise ParameterError(f"|Y| = {k} exceeds d_cap = {d_cap}")

    def tuple_value(t):
        return op_norm(eval_on_tuple(fm, t.matrices, tols))

    base = quotient_rep(presentation, pts, _orthogonal_algebra(k, tols), tols)
    if isinstance(base, RejectedTuple):  # interior nodes make this unreachable
        raise ParameterError("orthogonal start rejected; are all nodes interior?")
    base_val = tuple_value(base)
    best_val = base_val
    best_tuple = base

    eye = np.eye(k, dtype=np.complex128)
    for r in range(restarts):
        rng = np.random.default_rng((seed, r))
        s_cur = eye
        cur_val = base_val
        cur_tuple = base
        step = step_init
        for _ in range(steps):
            g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            s_new = s_cur + step * g
            step *= step_decay
            sv = np.linalg.svd(s_new, compute_uv=False)
            if sv[-1] < 1e-8 * sv[0]:
                continue
            s_inv = np.linalg.inv(s_new)
            es = [np.outer(s_new[:, i], s_inv[i]) for i in range(k)]
            try:
                alg = KIdempotentAlgebra(es, tols)
            except ParameterError:
                continue
            cand = quotient_rep(presentation, pts, alg, tols)
            if isinstance(cand, RejectedTuple):
                continue
            if min(cand.margins) < 0.0:  # hard rejection, no slack for the search
                continue
            val = tuple_value(cand)
            if val > cur_val:
                cur_val, cur_tuple, s_cur = val, cand, s_new
        if cur_val > best_val:  # strict: earliest restart wins ties
            best_val, best_tuple = cur_val, cur_tuple

    best_tuple.provenance.update({"seed": seed, "restarts": restarts, "steps": steps})
    return {"value": best_val, "best": best_tuple}
