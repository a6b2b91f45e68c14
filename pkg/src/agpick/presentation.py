"""Analytically presented domains G = {z ∈ ℂᴺ : ‖F_k(z)‖ < 1} as evaluable data.

A presentation is a finite list of matrix-valued rational functions.  This
module holds the sparse multivariate polynomial type, rational entries, the
named domain presets, and evaluation both at points and at commuting matrix
tuples (polynomial functional calculus; rationals via num(T)·den(T)⁻¹).

Only finite presentations are representable here; infinite families must be
truncated by the caller before they can be expressed as data.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    CommutativityError,
    DimensionError,
    EvaluationError,
    ParameterError,
    SpectrumError,
)
from .linalg import as_cmatrix, frob, op_norm

__all__ = [
    "MultiPoly",
    "RationalFn",
    "FunctionMatrix",
    "Presentation",
    "eval_fn",
    "in_domain",
    "preset",
    "PRESET_NAMES",
    "check_commuting",
    "eval_on_tuple",
    "joint_diagonal",
]


class MultiPoly:
    """Sparse polynomial in N variables: exponent multi-index -> coefficient.

    Zero coefficients are never stored.  Instances are immutable in practice;
    arithmetic returns new objects.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        if dim < 0:
            raise ParameterError("dim must be nonnegative")
        self.dim = int(dim)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.dim:
                raise DimensionError(
                    f"exponent {exp} has length {len(exp)}, expected {self.dim}"
                )
            if any(e < 0 for e in exp):
                raise ParameterError(f"negative exponent in {exp}")
            c = complex(c)
            if c != 0:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def constant(cls, dim, c):
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def coordinate(cls, dim, j, power=1):
        """The monomial z_j^power."""
        if not 0 <= j < dim:
            raise ParameterError(f"coordinate index {j} out of range for dim {dim}")
        exp = [0] * dim
        exp[j] = power
        return cls(dim, {tuple(exp): 1.0})

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, 0) + c
        return MultiPoly(self.dim, merged)

    def __sub__(self, other):
        return self + (self._coerce(other) * (-1))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return MultiPoly(self.dim, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.dim, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.dim != self.dim:
                raise DimensionError("polynomials have different variable counts")
            return other
        return MultiPoly.constant(self.dim, other)

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.dim, 0j)

    def max_exponents(self):
        """Per-variable maximum exponent (all zeros for constants)."""
        out = [0] * self.dim
        for exp in self.terms:
            for j, e in enumerate(exp):
                out[j] = max(out[j], e)
        return out

    def eval(self, z) -> complex:
        z = np.asarray(z, dtype=np.complex128).reshape(-1)
        if z.size != self.dim:
            raise DimensionError(f"point has {z.size} coordinates, expected {self.dim}")
        total = 0j
        for exp, c in self.terms.items():
            term = c
            for zj, e in zip(z, exp):
                if e:
                    term *= zj**e
            total += term
        return total

    def eval_tuple(self, powers) -> np.ndarray:
        """Functional calculus given per-variable power tables.

        ``powers[j][e]`` must be T_j^e; see :func:`eval_on_tuple` for the
        public entry point that validates commutativity.
        """
        d = powers[0][0].shape[0] if self.dim else 1
        acc = np.zeros((d, d), dtype=np.complex128)
        eye = np.eye(d, dtype=np.complex128)
        for exp, c in self.terms.items():
            term = eye
            for j, e in enumerate(exp):
                if e:
                    term = term @ powers[j][e]
            acc = acc + c * term
        return acc

    def __repr__(self):
        return f"MultiPoly(dim={self.dim}, terms={len(self.terms)})"


class RationalFn:
    """Quotient of two sparse polynomials with the same variable count.

    No simplification is attempted: poles are detected numerically at
    evaluation time (|den(z)| must exceed the pole tolerance).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly = None):
        if den is None:
            den = MultiPoly.constant(num.dim, 1.0)
        if num.dim != den.dim:
            raise DimensionError("numerator and denominator dims differ")
        if not den.terms:
            raise ParameterError("denominator is identically zero")
        self.num = num
        self.den = den

    @property
    def dim(self):
        return self.num.dim

    def is_polynomial(self):
        return self.den.is_constant()

    def eval(self, z, tols: Tolerances = DEFAULT_TOLS) -> complex:
        dv = self.den.eval(z)
        if abs(dv) <= tols.pole:
            raise EvaluationError(f"denominator vanishes at {z} (|den| = {abs(dv):.2e})")
        return self.num.eval(z) / dv

    def eval_tuple(self, powers, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
        nv = self.num.eval_tuple(powers)
        if self.is_polynomial():
            c = self.den.constant_value()
            return nv / c
        dv = self.den.eval_tuple(powers)
        sv = np.linalg.svd(dv, compute_uv=False)
        if sv[-1] <= tols.den_sv:
            raise SpectrumError(
                f"denominator is singular on the tuple (min σ = {sv[-1]:.2e})"
            )
        return np.linalg.solve(dv.conj().T, nv.conj().T).conj().T  # nv @ dv^{-1}

    def __repr__(self):
        return f"RationalFn(num={self.num!r}, den={self.den!r})"


class FunctionMatrix:
    """An m × n matrix whose entries are MultiPoly or RationalFn values."""

    __slots__ = ("rows", "cols", "entries", "dim")

    def __init__(self, entries):
        if not entries or not entries[0]:
            raise DimensionError("function matrix must be nonempty")
        self.rows = len(entries)
        self.cols = len(entries[0])
        flat = []
        for row in entries:
            if len(row) != self.cols:
                raise DimensionError("ragged rows in function matrix")
            for f in row:
                if isinstance(f, MultiPoly):
                    f = RationalFn(f)
                if not isinstance(f, RationalFn):
                    raise ParameterError(f"unsupported entry type {type(f).__name__}")
                flat.append(f)
        self.entries = [
            flat[i * self.cols : (i + 1) * self.cols] for i in range(self.rows)
        ]
        dims = {f.dim for row in self.entries for f in row}
        if len(dims) != 1:
            raise DimensionError("entries disagree on the number of variables")
        self.dim = dims.pop()

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_polynomial(self):
        return all(f.is_polynomial() for row in self.entries for f in row)

    def max_exponents(self):
        out = [0] * self.dim
        for row in self.entries:
            for f in row:
                for poly in (f.num, f.den):
                    for j, e in enumerate(poly.max_exponents()):
                        out[j] = max(out[j], e)
        return out

    def eval(self, z, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
        out = np.empty((self.rows, self.cols), dtype=np.complex128)
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                try:
                    out[i, j] = f.eval(z, tols)
                except EvaluationError as exc:
                    raise EvaluationError(f"entry ({i}, {j}): {exc}") from None
        return out

    def eval_tuple(self, tuple_or_powers, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
        """Evaluate on a commuting tuple; returns the (m·d) × (n·d) block matrix.

        Accepts either the tuple itself or a prebuilt power table.  Does not
        re-check commutativity; use :func:`eval_on_tuple` for the checked path.
        """
        powers = tuple_or_powers
        if powers and isinstance(powers[0], np.ndarray) and powers[0].ndim == 2:
            powers = _power_table(powers, self.max_exponents())
        d = powers[0][0].shape[0] if self.dim else 1
        out = np.zeros((self.rows * d, self.cols * d), dtype=np.complex128)
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                out[i * d : (i + 1) * d, j * d : (j + 1) * d] = f.eval_tuple(powers, tols)
        return out


@dataclass(frozen=True)
class Presentation:
    """A named finite analytic presentation {F_k} of a domain in ℂᴺ."""

    dim: int
    functions: tuple
    name: str = ""
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.functions:
            raise ParameterError("presentation needs at least one function")
        for k, f in enumerate(self.functions):
            if not isinstance(f, FunctionMatrix):
                raise ParameterError(f"function {k} is not a FunctionMatrix")
            if f.dim != self.dim:
                raise DimensionError(
                    f"function {k} has dim {f.dim}, presentation has dim {self.dim}"
                )

    @property
    def shapes(self):
        return [f.shape for f in self.functions]


def eval_fn(f: FunctionMatrix, z, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Evaluate one presentation function entrywise at a point."""
    return f.eval(z, tols)


def in_domain(pres: Presentation, z, tols: Tolerances = DEFAULT_TOLS):
    """Return (inside, margin) where margin = min_k (1 − ‖F_k(z)‖)."""
    margin = min(1.0 - op_norm(f.eval(z, tols)) for f in pres.functions)
    return margin > 0.0, margin


# ---------------------------------------------------------------------------
# presets


def _poly(dim, terms):
    return MultiPoly(dim, terms)


def _z(dim, j):
    return MultiPoly.coordinate(dim, j)


def _preset_polydisk(n=2):
    n = int(n)
    if n < 1:
        raise ParameterError("polydisk needs n ≥ 1")
    fns = tuple(FunctionMatrix([[_z(n, j)]]) for j in range(n))
    return Presentation(n, fns, "polydisk", {"n": n})


def _preset_ball_row(n=2):
    n = int(n)
    if n < 1:
        raise ParameterError("ball_row needs n ≥ 1")
    row = FunctionMatrix([[_z(n, j) for j in range(n)]])
    return Presentation(n, (row,), "ball_row", {"n": n})


def _preset_ball_col(n=2):
    n = int(n)
    if n < 1:
        raise ParameterError("ball_col needs n ≥ 1")
    col = FunctionMatrix([[_z(n, j)] for j in range(n)])
    return Presentation(n, (col,), "ball_col", {"n": n})


def _preset_ball_rowcol(n=2):
    n = int(n)
    if n < 1:
        raise ParameterError("ball_rowcol needs n ≥ 1")
    row = FunctionMatrix([[_z(n, j) for j in range(n)]])
    col = FunctionMatrix([[_z(n, j)] for j in range(n)])
    return Presentation(n, (row, col), "ball_rowcol", {"n": n})


def _preset_lens(a=0.0, b=0.5):
    a, b = complex(a), complex(b)
    if abs(a - b) >= 1:
        raise ParameterError("lens needs |a − b| < 1")
    f1 = FunctionMatrix([[_z(1, 0) - MultiPoly.constant(1, a)]])
    f2 = FunctionMatrix([[_z(1, 0) - MultiPoly.constant(1, b)]])
    return Presentation(1, (f1, f2), "lens", {"a": a, "b": b})


def _preset_annulus(r=0.5):
    r = float(r)
    if not 0 < r < 1:
        raise ParameterError("annulus needs 0 < r < 1")
    f1 = FunctionMatrix([[_z(1, 0)]])
    f2 = FunctionMatrix([[RationalFn(MultiPoly.constant(1, r), _z(1, 0))]])
    return Presentation(1, (f1, f2), "annulus", {"r": r})


def _preset_matrix_ball(rows=2, cols=2):
    rows, cols = int(rows), int(cols)
    if rows < 1 or cols < 1:
        raise ParameterError("matrix_ball needs dims ≥ 1")
    n = rows * cols
    entries = [[_z(n, i * cols + j) for j in range(cols)] for i in range(rows)]
    return Presentation(n, (FunctionMatrix(entries),), "matrix_ball",
                        {"rows": rows, "cols": cols})


def _preset_disk_pow():
    f1 = FunctionMatrix([[MultiPoly.coordinate(1, 0, power=2)]])
    f2 = FunctionMatrix([[MultiPoly.coordinate(1, 0, power=3)]])
    return Presentation(1, (f1, f2), "disk_pow", {})


def _preset_halfplane():
    # (z − 1)/(z + 1) maps {Re z > 0} onto the unit disk
    num = _z(1, 0) - MultiPoly.constant(1, 1.0)
    den = _z(1, 0) + MultiPoly.constant(1, 1.0)
    f = FunctionMatrix([[RationalFn(num, den)]])
    return Presentation(1, (f,), "halfplane", {})


_PRESETS = {
    "polydisk": _preset_polydisk,
    "ball_row": _preset_ball_row,
    "ball_col": _preset_ball_col,
    "ball_rowcol": _preset_ball_rowcol,
    "lens": _preset_lens,
    "annulus": _preset_annulus,
    "matrix_ball": _preset_matrix_ball,
    "disk_pow": _preset_disk_pow,
    "halfplane": _preset_halfplane,
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str, **params) -> Presentation:
    """Build a named preset presentation.

    ``disk`` is accepted as shorthand for the 1-variable polydisk.
    """
    if name == "disk":
        return _preset_polydisk(1)
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise ParameterError(
            f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None
    return builder(**params)


# ---------------------------------------------------------------------------
# matrix tuples


def check_commuting(ts, tols: Tolerances = DEFAULT_TOLS):
    """Validate a tuple of square matrices of equal size that pairwise commute."""
    mats = [as_cmatrix(t) for t in ts]
    if not mats:
        raise DimensionError("empty tuple")
    d = mats[0].shape[0]
    for t in mats:
        if t.shape != (d, d):
            raise DimensionError(f"tuple entries must all be {d}×{d}, got {t.shape}")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            c = frob(mats[i] @ mats[j] - mats[j] @ mats[i])
            if c >= tols.commutator:
                raise CommutativityError(
                    f"[T_{i}, T_{j}] has Frobenius norm {c:.2e} ≥ {tols.commutator:.0e}"
                )
    return mats


def _power_table(mats, max_exps):
    table = []
    for t, e in zip(mats, max_exps):
        d = t.shape[0]
        pows = [np.eye(d, dtype=np.complex128)]
        for _ in range(e):
            pows.append(pows[-1] @ t)
        table.append(pows)
    return table


def eval_on_tuple(f, ts, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Evaluate a function matrix (or single entry) on a commuting tuple.

    Returns the (m·d) × (n·d) block matrix with block (i, j) = f_ij(T).
    Raises CommutativityError when the tuple fails the pairwise check and
    SpectrumError when a rational denominator is singular on the tuple.
    """
    if isinstance(f, MultiPoly):
        f = FunctionMatrix([[f]])
    elif isinstance(f, RationalFn):
        f = FunctionMatrix([[f]])
    mats = check_commuting(ts, tols)
    if len(mats) != f.dim:
        raise DimensionError(f"tuple has {len(mats)} entries, function needs {f.dim}")
    powers = _power_table(mats, f.max_exponents())
    return f.eval_tuple(powers, tols)


def joint_diagonal(ts, tols: Tolerances = DEFAULT_TOLS, seed: int = 0):
    """Approximate joint eigenvalue tuples of a commuting family.

    Schur-triangularizes a random linear combination and reads off the joint
    diagonal.  Exact for exactly commuting matrices; for user-supplied tuples
    this is the documented weaker substitute for a Taylor-spectrum check.
    Returns an array of shape (d, N): one joint eigenvalue tuple per row.
    """
    import scipy.linalg

    mats = check_commuting(ts, tols)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(len(mats)) + 1j * rng.standard_normal(len(mats))
    combo = sum(c * t for c, t in zip(coeffs, mats))
    _, q = scipy.linalg.schur(combo, output="complex")
    return np.column_stack([np.diag(q.conj().T @ t @ q) for t in mats])
