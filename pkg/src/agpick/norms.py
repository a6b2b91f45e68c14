"""Quotient norms by bisection over feasibility, and from-below estimates of
the global norm as suprema of quotient norms over sampled finite subsets.

The bisection relies on scaling covariance: feasibility at targets W implies
feasibility at cW for |c| ≤ 1, so the feasibility predicate is monotone in
the norm level t.  A stalled solve is treated as infeasible — that hysteresis
is recorded in the result metadata, never hidden.

The subset estimate is one-sided by design: each certificate is a rigorous
(modulo float) upper bound for its own subset, and the supremum over all
finite subsets equals the global norm, but no convergence rate is claimed.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import EvaluationError, InconclusiveError, ParameterError
from .linalg import op_norm
from .presentation import (
    FunctionMatrix,
    MultiPoly,
    Presentation,
    RationalFn,
    in_domain,
)
from .sdp import Certificate, InterpolationProblem, build_lmi, solve_feasibility

__all__ = [
    "NormResult",
    "quotient_norm",
    "schur_agler_norm_estimate",
    "sup_norm_lower",
    "sample_interior",
    "as_function_matrix",
]


@dataclass
class NormResult:
    lower: float
    upper: float
    witness: list
    certificate_at_upper: Certificate | None
    iterations: int
    metadata: dict = field(default_factory=dict)


def as_function_matrix(f) -> FunctionMatrix:
    """Coerce a MultiPoly, RationalFn, FunctionMatrix or nested list."""
    if isinstance(f, FunctionMatrix):
        return f
    if isinstance(f, (MultiPoly, RationalFn)):
        return FunctionMatrix([[f]])
    return FunctionMatrix(f)


def quotient_norm(presentation: Presentation, points, targets, tol: float = None,
                  tols: Tolerances = DEFAULT_TOLS, max_iter: int = None,
                  probe_max_iter: int = None) -> NormResult:
    """Bisection for the quotient norm of the data (Y, W) on the domain.

    Brackets from the pointwise lower bound max_i ‖W_i‖ by doubling until a
    level is feasible, then bisects to width ``tol``.  The returned upper
    level carries its certificate; stalled or inconclusive solves inside the
    bracket count as infeasible and are listed in the metadata (treating
    inconclusive as infeasible widens the hysteresis band, never the
    certified side).  Feasible-side solves are warm-started by secant
    extrapolation of the two most recent feasible solutions.

    ``probe_max_iter`` optionally caps each bisection probe below the full
    budget; the default is the full budget, since a cheap cap trades the
    exactness of the infeasible side for speed.
    """
    tol = tols.norm_tol if tol is None else float(tol)
    if tol <= 0:
        raise ParameterError("tol must be positive")
    prob = InterpolationProblem(presentation, points, targets, tols)
    base = build_lmi(prob, 0.0, tols)

    t_lo = max(op_norm(w) for w in prob.targets)
    cap = max_iter or tols.max_iter
    probe_cap = min(probe_max_iter or cap, cap)
    state = {"iters": 0, "hysteresis": [], "warm": None}

    def try_level(t):
        # warm-start each probe from the previous probe's best iterate: the
        # feasible sets at nearby levels nearly coincide, and a start close
        # to the thin feasible region is what makes the projections converge
        # at bisection accuracy.  The sequence of levels is a deterministic
        # function of the inputs, so results are reproducible.
        lmi = base.with_targets([w / t for w in prob.targets])
        try:
            res = solve_feasibility(lmi, tols, max_iter=probe_cap,
                                    start=state["warm"])
        except InconclusiveError as exc:
            state["iters"] += exc.iterations
            state["hysteresis"].append({"level": t, "gap": exc.gap,
                                        "outcome": "inconclusive"})
            state["warm"] = lmi.pack([exc.best.gamma0] + exc.best.gammas)
            return None
        state["iters"] += res.iterations
        state["warm"] = lmi.pack(
            [res.certificate.gamma0] + res.certificate.gammas
        )
        if not res.feasible:
            state["hysteresis"].append({"level": t, "gap": res.gap,
                                        "outcome": "stalled"})
            return None
        return res.certificate

    hi = max(t_lo, tol)
    lo = t_lo
    cert = try_level(hi)
    doublings = 0
    while cert is None:
        doublings += 1
        if doublings > 60:
            raise InconclusiveError(
                f"no feasible level found up to t = {hi:.3e}",
                gap=None, iterations=state["iters"],
            )
        lo = hi
        hi *= 2.0
        cert = try_level(hi)

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        cand = try_level(mid)
        if cand is None:
            lo = mid
        else:
            hi, cert = mid, cand

    return NormResult(
        lower=lo, upper=hi, witness=list(prob.points),
        certificate_at_upper=cert, iterations=state["iters"],
        metadata={"doublings": doublings, "hysteresis": state["hysteresis"],
                  "pointwise_lower": t_lo, "tol": tol},
    )


def sup_norm_lower(f, presentation: Presentation, samples,
                   tols: Tolerances = DEFAULT_TOLS) -> float:
    """max_z ‖f(z)‖ over the samples; always a lower bound for the norm."""
    fm = as_function_matrix(f)
    return max(op_norm(fm.eval(z, tols)) for z in samples)


def sample_interior(presentation: Presentation, mode: str = "random",
                    count: int = 24, seed: int = 0, margin_floor: float = None,
                    box: float = 1.5, tols: Tolerances = DEFAULT_TOLS):
    """Sample `count` points of the domain with margin ≥ margin_floor.

    ``random`` rejection-samples the box [-box, box] on every real coordinate;
    ``grid`` walks a deterministic lattice over the same box.  Poles simply
    reject the candidate.
    """
    floor = tols.sample_margin if margin_floor is None else margin_floor
    n = presentation.dim
    pts = []

    def admit(z):
        try:
            _, margin = in_domain(presentation, z, tols)
        except EvaluationError:
            return False
        return margin >= floor

    if mode == "random":
        rng = np.random.default_rng(seed)
        tries = 0
        while len(pts) < count and tries < 20000 * count:
            tries += 1
            xy = rng.uniform(-box, box, size=2 * n)
            z = xy[:n] + 1j * xy[n:]
            if admit(z):
                pts.append(z)
    elif mode == "grid":
        steps = max(2, int(np.ceil((count * 20.0) ** (1.0 / (2 * n)))))
        axis = np.linspace(-box, box, steps)
        grids = np.meshgrid(*([axis] * (2 * n)), indexing="ij")
        coords = np.stack([g.reshape(-1) for g in grids], axis=1)
        for xy in coords:
            z = xy[:n] + 1j * xy[n:]
            if admit(z):
                pts.append(z)
                if len(pts) >= count:
                    break
    else:
        raise ParameterError(f"unknown sampler mode {mode!r}")

    if len(pts) < count:
        raise ParameterError(
            f"found only {len(pts)}/{count} interior points with margin ≥ {floor}"
        )
    return pts


def _sample_subsets(points, lmax, count, seed):
    """All singletons first, then random subsets of sizes 2..lmax."""
    subsets = [[i] for i in range(len(points))]
    rng = np.random.default_rng(seed)
    size = 2
    while len(subsets) < count and lmax >= 2:
        take = min(size, len(points))
        idx = sorted(rng.choice(len(points), size=take, replace=False).tolist())
        if idx not in subsets:
            subsets.append(idx)
        size = 2 + (size - 1) % max(1, lmax - 1)
    return subsets


def schur_agler_norm_estimate(f, presentation: Presentation, mode: str = "random",
                              count: int = 24, seed: int = 0, tol: float = None,
                              lmax: int = 5, margin_floor: float = None,
                              threads: int = None,
                              tols: Tolerances = DEFAULT_TOLS) -> NormResult:
    """Estimate the global norm from below: max quotient norm over sampled Y.

    Monotone from below; exact in the limit of subset enumeration.  The result
    carries the maximizing subset as witness and its certificate, which is the
    only rigorous upper bound claimed (for that subset, not the supremum).
    """
    fm = as_function_matrix(f)
    if not fm.is_polynomial():
        raise ParameterError("estimate requires polynomial entries")
    if fm.dim != presentation.dim:
        raise ParameterError(
            f"function has {fm.dim} variables, domain has {presentation.dim}"
        )
    pts = sample_interior(presentation, mode, count, seed, margin_floor, tols=tols)
    subsets = _sample_subsets(pts, lmax, count, seed)

    def run(idx):
        ys = [pts[i] for i in idx]
        ws = [fm.eval(y, tols) for y in ys]
        return quotient_norm(presentation, ys, ws, tol=tol, tols=tols)

    if threads is None:
        threads = int(os.environ.get("AGPK_THREADS", 0) or 0) or (os.cpu_count() or 1)
    threads = max(1, min(threads, len(subsets)))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, subsets))
    else:
        results = [run(idx) for idx in subsets]

    # deterministic reduction: best upper bound, earliest subset wins ties
    best_i = max(range(len(results)),
                 key=lambda i: (results[i].upper, -i))
    best = results[best_i]
    total_iters = sum(r.iterations for r in results)
    return NormResult(
        lower=best.lower, upper=best.upper, witness=best.witness,
        certificate_at_upper=best.certificate_at_upper, iterations=total_iters,
        metadata={"subsets_tried": len(subsets), "seed": seed,
                  "points_sampled": len(pts), "mode": mode,
                  "per_subset_upper": [r.upper for r in results]},
    )
