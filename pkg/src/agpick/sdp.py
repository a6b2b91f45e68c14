"""Semidefinite feasibility for finite interpolation problems.

The factorization identity over a finite node set Y = {x_1, …, x_l} with
targets W_i reads, block by block,

    I_m − W_i W_j* = R + Γ₀(i,j) + Σ_k Σ_{a,b} Δ_k(i,j)_{a,b} · Γ_k[(i,a),(j,b)]

with Δ_k(i,j) = I_{m_k} − F_k(x_i) F_k(x_j)*, where Γ₀ (size l·m), each Γ_k
(size l·m_k·m) and, in the strict variant, R ⪰ strict_eps·I are positive
semidefinite.  Any multiplicity in the factorization is absorbed into the
rank of Γ_k, so this parametrization loses nothing.

Feasibility is decided by Dykstra alternating projections between the product
PSD cone and the affine constraint set; the result is a self-verifiable
certificate.  A stall is evidence of infeasibility, not a proof — callers
treat it as infeasible and say so.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

try:  # pragma: no cover - exercised indirectly
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    DimensionError,
    DomainError,
    DuplicatePointError,
    InconclusiveError,
)
from .linalg import as_cmatrix, frob, hermitian_eig
from .presentation import Presentation, in_domain

__all__ = [
    "InterpolationProblem",
    "DeltaBlocks",
    "Certificate",
    "SolveResult",
    "build_lmi",
    "solve_feasibility",
    "verify_certificate",
    "classical_pick_test",
]


class InterpolationProblem:
    """A finite node set inside the domain plus one target matrix per node."""

    def __init__(self, presentation: Presentation, points, targets,
                 tols: Tolerances = DEFAULT_TOLS):
        self.presentation = presentation
        self.points = [np.asarray(p, dtype=np.complex128).reshape(-1) for p in points]
        self.targets = [as_cmatrix(w) for w in targets]
        if len(self.points) != len(self.targets):
            raise DimensionError(
                f"{len(self.points)} points but {len(self.targets)} targets"
            )
        if not self.points:
            raise DimensionError("need at least one interpolation node")
        for p in self.points:
            if p.size != presentation.dim:
                raise DimensionError(
                    f"point {p} has {p.size} coordinates, domain has {presentation.dim}"
                )
        shape = self.targets[0].shape
        for w in self.targets:
            if w.shape != shape:
                raise DimensionError("all targets must share one shape")
        for i in range(len(self.points)):
            for j in range(i + 1, len(self.points)):
                if np.linalg.norm(self.points[i] - self.points[j]) < 1e-12:
                    raise DuplicatePointError(f"points {i} and {j} coincide")
        self.margins = []
        for i, p in enumerate(self.points):
            inside, margin = in_domain(presentation, p, tols)
            if not inside:
                raise DomainError(
                    f"point {i} lies outside the domain (margin {margin:.6g})",
                    margin=margin,
                )
            self.margins.append(margin)
        self.tols = tols

    @property
    def npoints(self):
        return len(self.points)

    @property
    def target_shape(self):
        return self.targets[0].shape

    def scaled(self, t: float) -> "InterpolationProblem":
        """Same nodes with targets divided by t (norm-level rescaling)."""
        out = object.__new__(InterpolationProblem)
        out.presentation = self.presentation
        out.points = self.points
        out.targets = [w / t for w in self.targets]
        out.margins = self.margins
        out.tols = self.tols
        return out


class DeltaBlocks:
    """Per constraint k, the l×l array of m_k×m_k blocks I − F_k(x_i)F_k(x_j)*."""

    def __init__(self, problem: InterpolationProblem):
        pres = problem.presentation
        vals = [
            [f.eval(p, problem.tols) for p in problem.points] for f in pres.functions
        ]
        self.blocks = []
        for k, f in enumerate(pres.functions):
            mk = f.rows
            arr = np.empty((problem.npoints, problem.npoints, mk, mk), dtype=np.complex128)
            for i, fi in enumerate(vals[k]):
                for j, fj in enumerate(vals[k]):
                    arr[i, j] = np.eye(mk) - fi @ fj.conj().T
            self.blocks.append(arr)
        self.values = vals  # F_k(x_i), kept for diagnostics


@dataclass
class Certificate:
    """PSD Gram blocks realizing the factorization identity; self-verifying.

    gamma0 has size l·m; gammas[k] has size l·m_k·m with row index ordered as
    (point i, row a of F_k, target row r).  R is present only for the strict
    variant.  residual and min_eig are measured at emission.
    """

    gamma0: np.ndarray
    gammas: list
    R: np.ndarray | None
    residual: float
    min_eig: float


@dataclass
class SolveResult:
    status: str                 # "feasible" | "stalled"
    certificate: Certificate
    gap: float
    iterations: int

    @property
    def feasible(self):
        return self.status == "feasible"


# ---------------------------------------------------------------------------
# svec machinery: Frobenius-isometric real coordinates for Hermitian matrices

_SQRT2 = math.sqrt(2.0)


class _HermIndex:
    """Precomputed flat index arrays for packing Hermitian h×h matrices."""

    _cache = {}

    def __new__(cls, h):
        if h not in cls._cache:
            obj = super().__new__(cls)
            obj.h = h
            r, c = np.triu_indices(h, 1)
            obj.diag = (np.arange(h) * (h + 1)).astype(np.intp)
            obj.upper = (r * h + c).astype(np.intp)
            obj.lower = (c * h + r).astype(np.intp)
            obj.nupper = obj.upper.size
            obj.nparams = h * h
            cls._cache[h] = obj
        return cls._cache[h]

    def pack(self, m: np.ndarray) -> np.ndarray:
        f = m.reshape(-1)
        up = f[self.upper]
        return np.concatenate([f[self.diag].real, _SQRT2 * up.real, _SQRT2 * up.imag])

    def unpack(self, v: np.ndarray) -> np.ndarray:
        h, nu = self.h, self.nupper
        out = np.zeros(h * h, dtype=np.complex128)
        out[self.diag] = v[:h]
        up = (v[h : h + nu] + 1j * v[h + nu :]) / _SQRT2
        out[self.upper] = up
        out[self.lower] = up.conj()
        return out.reshape(h, h)


class LMI:
    """Descriptor of one feasibility instance: deltas, targets, affine map.

    Immutable once built; `with_targets` produces a sibling for rescaled
    targets that shares the (target-independent) constraint matrix and its
    factorization, which is what makes bisection cheap.
    """

    def __init__(self, problem, deltas, strict_eps, tols):
        self.problem = problem
        self.deltas = deltas
        self.strict_eps = float(strict_eps)
        self.tols = tols
        l = problem.npoints
        m, _ = problem.target_shape
        self.block_shape = (l, m)

        # R is never a solver unknown: feasibility with a free R ⪰ eps·I is
        # equivalent to feasibility with R fixed at eps·I (the excess R−eps·I
        # is a constant-in-(i,j) PSD kernel, absorbed by Γ₀).  Solving the
        # shifted problem avoids a near-flat direction that all but freezes
        # the alternating projections.
        self.sizes = [l * m] + [
            l * f.rows * m for f in problem.presentation.functions
        ]
        self.floors = [0.0] * len(self.sizes)
        self.has_R = self.strict_eps > 0

        self._index = [_HermIndex(h) for h in self.sizes]
        offs = np.cumsum([0] + [ix.nparams for ix in self._index])
        self._offsets = offs
        self.nparams = int(offs[-1])
        self._build_workspace()

        # constraint layout: (i, j) with i ≤ j; diagonal blocks Hermitian-packed
        self._cidx = _HermIndex(m)
        self._cons = []
        start = 0
        for i in range(l):
            for j in range(i, l):
                width = m * m if i == j else 2 * m * m
                self._cons.append((i, j, start, start + width))
                start += width
        self.nconstraints = start
        self._seg_starts = np.array([c[2] for c in self._cons], dtype=np.intp)
        self._seg_bounds = np.append(self._seg_starts, start).astype(np.intp)

        self.S = self._target_blocks(problem)
        self.A = self._assemble_matrix()
        gram = self.A @ self.A.T
        # rows are independent (the Γ₀ sub-map alone is onto), so gram ≻ 0
        self._proj = np.linalg.solve(gram, self.A).T  # A^T (A A^T)^{-1}
        self.b = self._pack_constraints(self.effective_targets())

    def _build_workspace(self):
        """Index plumbing for the hot loop.

        All unknown blocks live flattened in one complex workspace vector,
        grouped by size so each group can go through one batched eigh.  The
        svec coordinate vector x keeps the logical order (Γ₀, Γ_k…, R);
        these arrays translate between the two with whole-array indexing.
        """
        nunk = len(self.sizes)
        order = sorted(range(nunk), key=lambda u: self.sizes[u])
        woff = np.empty(nunk, dtype=np.intp)
        pos = 0
        groups = []  # (size, workspace start, count, floors)
        for u in order:
            h = self.sizes[u]
            if not groups or groups[-1][0] != h:
                groups.append([h, pos, 0, []])
            woff[u] = pos
            groups[-1][2] += 1
            groups[-1][3].append(self.floors[u])
            pos += h * h
        self._groups = [
            (h, start, cnt, np.asarray(floors)) for h, start, cnt, floors in groups
        ]
        self._nwork = pos

        xdiag, wdiag, xre, xim, wup, wlow = [], [], [], [], [], []
        for u, ix in enumerate(self._index):
            h, nu = ix.h, ix.nupper
            o = self._offsets[u]
            xdiag.append(np.arange(o, o + h))
            xre.append(np.arange(o + h, o + h + nu))
            xim.append(np.arange(o + h + nu, o + h + 2 * nu))
            wdiag.append(woff[u] + ix.diag)
            wup.append(woff[u] + ix.upper)
            wlow.append(woff[u] + ix.lower)
        self._xdiag = np.concatenate(xdiag)
        self._xre = np.concatenate(xre)
        self._xim = np.concatenate(xim)
        self._wdiag = np.concatenate(wdiag)
        self._wup = np.concatenate(wup)
        self._wlow = np.concatenate(wlow)

        # flat arrays for the jitted kernel
        self._gh = np.array([g[0] for g in self._groups], dtype=np.intp)
        self._gstart = np.array([g[1] for g in self._groups], dtype=np.intp)
        self._gcount = np.array([g[2] for g in self._groups], dtype=np.intp)
        self._gfloor = np.concatenate([g[3] for g in self._groups])

    def _to_work(self, x: np.ndarray) -> np.ndarray:
        wk = np.zeros(self._nwork, dtype=np.complex128)
        wk[self._wdiag] = x[self._xdiag]
        up = (x[self._xre] + 1j * x[self._xim]) / _SQRT2
        wk[self._wup] = up
        wk[self._wlow] = up.conj()
        return wk

    def _from_work(self, wk: np.ndarray) -> np.ndarray:
        x = np.empty(self.nparams)
        x[self._xdiag] = wk[self._wdiag].real
        up = wk[self._wup]
        x[self._xre] = _SQRT2 * up.real
        x[self._xim] = _SQRT2 * up.imag
        return x

    def project_cone_vec(self, x: np.ndarray) -> np.ndarray:
        """Cone projection straight on svec coordinates (hot path)."""
        wk = self._to_work(x)
        for h, start, cnt, floors in self._groups:
            batch = wk[start : start + cnt * h * h].reshape(cnt, h, h)
            lam, vec = np.linalg.eigh(batch)
            np.maximum(lam, floors[:, None], out=lam)
            rec = (vec * lam[:, None, :]) @ vec.conj().swapaxes(1, 2)
            wk[start : start + cnt * h * h] = rec.reshape(-1)
        return self._from_work(wk)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def _target_blocks(problem):
        l = problem.npoints
        m = problem.target_shape[0]
        s = np.empty((l, l, m, m), dtype=np.complex128)
        eye = np.eye(m)
        for i, wi in enumerate(problem.targets):
            for j in range(i, l):
                blk = eye - wi @ problem.targets[j].conj().T
                if i == j:
                    blk = 0.5 * (blk + blk.conj().T)
                s[i, j] = blk
                s[j, i] = blk.conj().T  # exact Hermitian pairing, not re-multiplied
        return s

    def apply(self, mats) -> np.ndarray:
        """The affine map: unknown blocks -> (l, l, m, m) left-hand side."""
        l, m = self.block_shape
        g0 = mats[0].reshape(l, m, l, m).transpose(0, 2, 1, 3)
        out = g0.copy()
        for k, delta in enumerate(self.deltas.blocks):
            mk = delta.shape[2]
            g6 = mats[1 + k].reshape(l, mk, m, l, mk, m)
            out += np.einsum("ijab,iarjbc->ijrc", delta, g6)
        return out

    def effective_targets(self) -> np.ndarray:
        """Constraint right-hand side: S, shifted by −eps·I in strict mode."""
        s = self.S.copy()
        if self.strict_eps > 0:
            m = self.block_shape[1]
            s -= self.strict_eps * np.eye(m)[None, None]
        return s

    def _pack_constraints(self, blocks) -> np.ndarray:
        v = np.empty(self.nconstraints)
        for i, j, lo, hi in self._cons:
            blk = blocks[i, j]
            if i == j:
                v[lo:hi] = self._cidx.pack(blk)
            else:
                flat = blk.reshape(-1)
                half = (hi - lo) // 2
                v[lo : lo + half] = flat.real
                v[lo + half : hi] = flat.imag
        return v

    def _assemble_matrix(self) -> np.ndarray:
        a = np.empty((self.nconstraints, self.nparams))
        x = np.zeros(self.nparams)
        for t in range(self.nparams):
            x[t] = 1.0
            a[:, t] = self._pack_constraints(self.apply(self.unpack(x)))
            x[t] = 0.0
        return a

    # -- packing -------------------------------------------------------------

    def pack(self, mats) -> np.ndarray:
        return np.concatenate([ix.pack(m) for ix, m in zip(self._index, mats)])

    def unpack(self, x: np.ndarray):
        return [
            ix.unpack(x[self._offsets[u] : self._offsets[u + 1]])
            for u, ix in enumerate(self._index)
        ]

    # -- projections ---------------------------------------------------------

    def project_cone(self, x: np.ndarray):
        """Project onto the product of PSD cones (R shifted by strict_eps)."""
        mats = self.unpack(x)
        out = []
        for m, floor in zip(mats, self.floors):
            w, u = np.linalg.eigh(m)
            np.maximum(w, floor, out=w)
            proj = (u * w) @ u.conj().T
            out.append(0.5 * (proj + proj.conj().T))
        return out

    def residual_norm(self, rv: np.ndarray) -> float:
        """Max Frobenius norm over constraint blocks, from the packed residual."""
        sums = np.add.reduceat(rv * rv, self._seg_starts)
        return float(np.sqrt(sums.max()))

    def with_targets(self, targets) -> "LMI":
        """Sibling descriptor for new targets; shares A and its factorization."""
        prob = object.__new__(InterpolationProblem)
        prob.presentation = self.problem.presentation
        prob.points = self.problem.points
        prob.targets = [as_cmatrix(w) for w in targets]
        prob.margins = self.problem.margins
        prob.tols = self.problem.tols
        if prob.targets[0].shape != self.problem.target_shape:
            raise DimensionError("new targets change the block shape")
        out = object.__new__(LMI)
        out.__dict__.update(self.__dict__)
        out.problem = prob
        out.S = self._target_blocks(prob)
        out.b = out._pack_constraints(out.effective_targets())
        return out


def build_lmi(problem: InterpolationProblem, strict_eps: float = 0.0,
              tols: Tolerances = DEFAULT_TOLS) -> LMI:
    """Assemble the feasibility descriptor for one interpolation problem.

    strict_eps > 0 adds the unknown R ⪰ strict_eps·I (the strict variant of
    the identity); strict_eps = 0 drops R, whose role is absorbed by Γ₀, and
    decides the closure (norm-level ≤) version.
    """
    if strict_eps < 0:
        raise DomainError("strict_eps must be nonnegative")
    return LMI(problem, DeltaBlocks(problem), strict_eps, tols)


# ---------------------------------------------------------------------------
# Dykstra iteration kernels.  The jitted kernel and the numpy loop implement
# the identical algorithm; AGPICK_NO_JIT=1 forces the numpy path.

_SQ2 = math.sqrt(2.0)


def _dykstra_numpy(lmi, x0, cap, window, tol_feas, tol_stall):
    x = x0.copy()
    p = np.zeros(lmi.nparams)
    best_res = math.inf
    best_u = x0.copy()
    anchor = math.inf
    it = 0
    while it < cap:
        it += 1
        u = lmi.project_cone_vec(x + p)
        p += x - u
        rv = lmi.A @ u - lmi.b
        res = lmi.residual_norm(rv)
        if res < best_res:
            best_res = res
            best_u = u
        if res < tol_feas:
            return 0, it, res, u
        x = u - lmi._proj @ rv
        if it % window == 0:
            if anchor - best_res < tol_stall:
                return 1, it, best_res, best_u
            anchor = best_res
    code = 2 if anchor - best_res >= tol_stall else 1
    return code, it, best_res, best_u


if _numba is not None:

    @_numba.njit(cache=True)
    def _dykstra_jit(A, proj, b, seg, xdiag, xre, xim, wdiag, wup, wlow,
                     gh, gstart, gcount, gfloor, nwork, x0, cap, window,
                     tol_feas, tol_stall):  # pragma: no cover - jitted
        nparams = x0.shape[0]
        nd = xdiag.shape[0]
        nu = xre.shape[0]
        x = x0.copy()
        p = np.zeros(nparams)
        u = np.empty(nparams)
        wk = np.zeros(nwork, dtype=np.complex128)
        best_res = 1e300
        best_u = x0.copy()
        anchor = 1e300
        it = 0
        while it < cap:
            it += 1
            xp = x + p
            for i in range(nd):
                wk[wdiag[i]] = complex(xp[xdiag[i]], 0.0)
            for i in range(nu):
                up = complex(xp[xre[i]], xp[xim[i]]) / _SQ2
                wk[wup[i]] = up
                wk[wlow[i]] = np.conj(up)
            member = 0
            for g in range(gh.shape[0]):
                h = gh[g]
                for mbr in range(gcount[g]):
                    base = gstart[g] + mbr * h * h
                    mat = np.empty((h, h), dtype=np.complex128)
                    for r in range(h):
                        for c in range(h):
                            mat[r, c] = wk[base + r * h + c]
                    lam, vec = np.linalg.eigh(mat)
                    floor = gfloor[member]
                    member += 1
                    for j in range(h):
                        if lam[j] < floor:
                            lam[j] = floor
                    for r in range(h):
                        for c in range(h):
                            acc = 0.0 + 0.0j
                            for j in range(h):
                                acc += vec[r, j] * lam[j] * np.conj(vec[c, j])
                            wk[base + r * h + c] = acc
            for i in range(nd):
                u[xdiag[i]] = wk[wdiag[i]].real
            for i in range(nu):
                up = wk[wup[i]]
                u[xre[i]] = _SQ2 * up.real
                u[xim[i]] = _SQ2 * up.imag
            for i in range(nparams):
                p[i] += x[i] - u[i]
            rv = np.dot(A, u) - b
            res2 = 0.0
            for s in range(seg.shape[0] - 1):
                acc = 0.0
                for t in range(seg[s], seg[s + 1]):
                    acc += rv[t] * rv[t]
                if acc > res2:
                    res2 = acc
            res = math.sqrt(res2)
            if res < best_res:
                best_res = res
                best_u[:] = u
            if res < tol_feas:
                return 0, it, res, u.copy()
            x = u - np.dot(proj, rv)
            if it % window == 0:
                if anchor - best_res < tol_stall:
                    return 1, it, best_res, best_u
                anchor = best_res
        code = 2 if anchor - best_res >= tol_stall else 1
        return code, it, best_res, best_u


def _run_dykstra(lmi, x0, cap, window, tol_feas, tol_stall):
    if _numba is not None and not os.environ.get("AGPICK_NO_JIT"):
        return _dykstra_jit(
            lmi.A, lmi._proj, lmi.b, lmi._seg_bounds,
            lmi._xdiag, lmi._xre, lmi._xim, lmi._wdiag, lmi._wup, lmi._wlow,
            lmi._gh, lmi._gstart, lmi._gcount, lmi._gfloor, lmi._nwork,
            x0, cap, window, tol_feas, tol_stall,
        )
    return _dykstra_numpy(lmi, x0, cap, window, tol_feas, tol_stall)


def _certificate(lmi: LMI, mats) -> Certificate:
    resid = lmi.effective_targets() - lmi.apply(mats)
    residual = float(
        max(np.linalg.norm(resid[i, j]) for i in range(lmi.block_shape[0])
            for j in range(lmi.block_shape[0]))
    )
    min_eig = min(float(np.linalg.eigvalsh(m).min()) for m in mats)
    gammas = [m.copy() for m in mats[1 : 1 + len(lmi.deltas.blocks)]]
    R = lmi.strict_eps * np.eye(lmi.block_shape[1]) if lmi.has_R else None
    if R is not None:
        min_eig = min(min_eig, lmi.strict_eps)
    return Certificate(mats[0].copy(), gammas, R, residual, min_eig)


def solve_feasibility(lmi: LMI, tols: Tolerances = None, max_iter: int = None,
                      start: np.ndarray = None) -> SolveResult:
    """Dykstra alternating projections between the PSD cones and the affine set.

    Returns Feasible when the cone-side iterate satisfies the constraints to
    within tol_feas, Stalled when the residual stops improving while still
    above it.  Raises InconclusiveError when the iteration cap is hit while
    the residual is still falling; the error carries the best iterate.
    """
    tols = tols or lmi.tols
    cap = max_iter or tols.max_iter
    window = tols.stall_window

    x0 = np.zeros(lmi.nparams) if start is None else np.asarray(start, dtype=float)
    code, it, res, best_u = _run_dykstra(
        lmi, x0, cap, window, tols.feas_residual, tols.stall
    )
    cert = _certificate(lmi, lmi.unpack(best_u))
    if code == 0:
        return SolveResult("feasible", cert, cert.residual, it)
    if code == 2:
        raise InconclusiveError(
            f"iteration cap {cap} reached with residual {res:.3e} still falling",
            best=cert, gap=res, iterations=it,
        )
    return SolveResult("stalled", cert, res, it)


def verify_certificate(problem: InterpolationProblem, cert: Certificate,
                       tols: Tolerances = DEFAULT_TOLS) -> dict:
    """Recompute the factorization residual and block eigenvalues from scratch.

    Deliberately independent of the solver: re-evaluates the presentation at
    the nodes, contracts the identity with explicit block loops, and
    eigendecomposes every certificate block afresh.
    """
    l = problem.npoints
    m, _ = problem.target_shape
    pres = problem.presentation
    shapes = [f.rows for f in pres.functions]

    if cert.gamma0.shape != (l * m, l * m):
        raise DimensionError(
            f"gamma0 has shape {cert.gamma0.shape}, expected {(l * m, l * m)}"
        )
    if len(cert.gammas) != len(pres.functions):
        raise DimensionError(
            f"{len(cert.gammas)} gamma blocks for {len(pres.functions)} constraints"
        )
    for k, (g, mk) in enumerate(zip(cert.gammas, shapes)):
        want = l * mk * m
        if g.shape != (want, want):
            raise DimensionError(f"gamma[{k}] has shape {g.shape}, expected square {want}")
    if cert.R is not None and cert.R.shape != (m, m):
        raise DimensionError(f"R has shape {cert.R.shape}, expected {(m, m)}")

    fvals = [[f.eval(p, tols) for p in problem.points] for f in pres.functions]

    worst = 0.0
    for i in range(l):
        for j in range(l):
            lhs = np.eye(m) - problem.targets[i] @ problem.targets[j].conj().T
            acc = cert.gamma0[i * m : (i + 1) * m, j * m : (j + 1) * m].copy()
            if cert.R is not None:
                acc = acc + cert.R
            for k, mk in enumerate(shapes):
                delta = np.eye(mk) - fvals[k][i] @ fvals[k][j].conj().T
                g = cert.gammas[k]
                for a in range(mk):
                    ra = (i * mk + a) * m
                    for b in range(mk):
                        cb = (j * mk + b) * m
                        acc = acc + delta[a, b] * g[ra : ra + m, cb : cb + m]
            worst = max(worst, frob(lhs - acc))

    # a tampered certificate may not even be Hermitian; report, never crash
    blocks = [cert.gamma0] + list(cert.gammas) + ([cert.R] if cert.R is not None else [])
    min_eigs, herm_defect = [], 0.0
    for blk in blocks:
        herm_defect = max(herm_defect, frob(blk - blk.conj().T) / (1.0 + frob(blk)))
        lam = np.linalg.eigvalsh(0.5 * (blk + blk.conj().T))
        min_eigs.append(float(lam[0]))
    verdict = (
        worst < tols.verify_residual
        and min(min_eigs) >= tols.cert_min_eig
        and herm_defect <= -tols.cert_min_eig
    )
    return {
        "residual": worst,
        "min_eig_per_block": min_eigs,
        "herm_defect": herm_defect,
        "verdict": bool(verdict),
    }


def classical_pick_test(points, targets, t: float = 1.0,
                        tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Classical disk oracle: PSD test on [(t² − w_i w̄_j)/(1 − z_i z̄_j)].

    Entirely independent of the feasibility solver; used to cross-check the
    one-variable disk specialization.
    """
    z = np.asarray(points, dtype=np.complex128).reshape(-1)
    w = np.asarray(targets, dtype=np.complex128).reshape(-1)
    if z.size != w.size:
        raise DimensionError(f"{z.size} points but {w.size} targets")
    if np.any(np.abs(z) >= 1):
        raise DomainError("all nodes must lie in the open unit disk")
    for i in range(z.size):
        for j in range(i + 1, z.size):
            if abs(z[i] - z[j]) < 1e-12:
                raise DuplicatePointError(f"points {i} and {j} coincide")
    pick = (t * t - np.outer(w, w.conj())) / (1.0 - np.outer(z, z.conj()))
    lam = hermitian_eig(pick, tols).eigenvalues
    return bool(lam[0] >= -tols.pick_eig * t * t)
