"""JSON wire formats and a deterministic serializer.

All floating-point fields are written with 17 significant digits so that
identical inputs and seeds produce byte-identical output.  NaN/Inf are never
emitted; absent values are null.  Complex data always travels as separate
re/im arrays, row-major.
"""

import json
import math

import numpy as np

from .errors import SchemaError
from .presentation import (
    FunctionMatrix,
    MultiPoly,
    Presentation,
    RationalFn,
    preset,
)
from .sdp import Certificate

__all__ = [
    "dumps",
    "cmatrix_to_obj",
    "cmatrix_from_obj",
    "certificate_to_obj",
    "certificate_from_obj",
    "presentation_to_obj",
    "presentation_from_obj",
    "function_matrix_to_obj",
    "function_matrix_from_obj",
    "points_to_obj",
    "points_from_obj",
]


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    return s


def dumps(obj, indent=None) -> str:
    """Deterministic JSON text; dict key order is preserved as built."""
    out = []
    _write(obj, out, indent, 0)
    return "".join(out)


def _write(obj, out, indent, depth):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        _write_items(
            ((json.dumps(str(k)) + (": " if indent else ":"), v) for k, v in obj.items()),
            len(obj), "{", "}", out, indent, depth,
        )
    elif isinstance(obj, (list, tuple)):
        _write_items(((None, v) for v in obj), len(obj), "[", "]", out, indent, depth)
    elif isinstance(obj, np.ndarray):
        _write(obj.tolist(), out, indent, depth)
    else:
        raise SchemaError(f"cannot serialize {type(obj).__name__}")


def _write_items(items, n, open_ch, close_ch, out, indent, depth):
    if n == 0:
        out.append(open_ch + close_ch)
        return
    out.append(open_ch)
    pad = "\n" + " " * (indent * (depth + 1)) if indent else ""
    closing = "\n" + " " * (indent * depth) if indent else ""
    first = True
    for key, v in items:
        if not first:
            out.append(",")
        first = False
        out.append(pad)
        if key is not None:
            out.append(key)
        _write(v, out, indent, depth + 1)
    out.append(closing + close_ch)


# ---------------------------------------------------------------------------
# complex matrices


def cmatrix_to_obj(a) -> dict:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        m = np.atleast_2d(m)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "re": [float(v) for v in m.real.reshape(-1)],
        "im": [float(v) for v in m.imag.reshape(-1)],
    }


def cmatrix_from_obj(obj) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad complexmatrix object: {exc}") from None
    if re.size != rows * cols or im.size != rows * cols:
        raise SchemaError(
            f"complexmatrix {rows}×{cols} needs {rows * cols} entries, "
            f"got re={re.size}, im={im.size}"
        )
    return (re + 1j * im).reshape(rows, cols)


# ---------------------------------------------------------------------------
# certificates


def certificate_to_obj(cert: Certificate) -> dict:
    return {
        "gamma0": cmatrix_to_obj(cert.gamma0),
        "gammas": [cmatrix_to_obj(g) for g in cert.gammas],
        "R": None if cert.R is None else cmatrix_to_obj(cert.R),
        "residual": float(cert.residual),
        "min_eig": float(cert.min_eig),
    }


def certificate_from_obj(obj) -> Certificate:
    try:
        gamma0 = cmatrix_from_obj(obj["gamma0"])
        gammas = [cmatrix_from_obj(g) for g in obj["gammas"]]
        r = obj.get("R")
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad certificate object: {exc}") from None
    return Certificate(
        gamma0=gamma0,
        gammas=gammas,
        R=None if r is None else cmatrix_from_obj(r),
        residual=float(obj.get("residual", float("nan"))),
        min_eig=float(obj.get("min_eig", float("nan"))),
    )


# ---------------------------------------------------------------------------
# polynomials, rational functions, presentations


def _poly_to_obj(p: MultiPoly) -> dict:
    terms = [
        {"exp": list(exp), "re": c.real, "im": c.imag}
        for exp, c in sorted(p.terms.items())
    ]
    return {"dim": p.dim, "terms": terms}


def _poly_from_obj(obj, dim=None) -> MultiPoly:
    try:
        d = int(obj["dim"]) if "dim" in obj else int(dim)
        terms = {}
        for t in obj["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            terms[exp] = terms.get(exp, 0) + complex(t.get("re", 0.0), t.get("im", 0.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad polynomial object: {exc}") from None
    return MultiPoly(d, terms)


def function_matrix_to_obj(fm: FunctionMatrix) -> dict:
    entries = []
    for row in fm.entries:
        out_row = []
        for f in row:
            cell = {"num": _poly_to_obj(f.num)}
            if not f.den.is_constant() or f.den.constant_value() != 1:
                cell["den"] = _poly_to_obj(f.den)
            out_row.append(cell)
        entries.append(out_row)
    return {"rows": fm.rows, "cols": fm.cols, "entries": entries}


def function_matrix_from_obj(obj, dim=None) -> FunctionMatrix:
    try:
        entries = obj["entries"]
        rows = []
        for row in entries:
            out_row = []
            for cell in row:
                num = _poly_from_obj(cell["num"], dim)
                den = cell.get("den")
                out_row.append(
                    RationalFn(num, None if den is None else _poly_from_obj(den, dim))
                )
            rows.append(out_row)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad function-matrix object: {exc}") from None
    fm = FunctionMatrix(rows)
    if "rows" in obj and (fm.rows, fm.cols) != (int(obj["rows"]), int(obj["cols"])):
        raise SchemaError(
            f"declared shape ({obj['rows']}, {obj['cols']}) does not match entries"
        )
    return fm


def presentation_to_obj(pres: Presentation) -> dict:
    return {
        "dim": pres.dim,
        "name": pres.name,
        "functions": [function_matrix_to_obj(f) for f in pres.functions],
    }


def presentation_from_obj(obj) -> Presentation:
    if not isinstance(obj, dict):
        raise SchemaError("domain must be an object")
    if "preset" in obj:
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise SchemaError("preset params must be an object")
        return preset(str(obj["preset"]), **params)
    try:
        dim = int(obj["dim"])
        fns = tuple(function_matrix_from_obj(f, dim) for f in obj["functions"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad presentation object: {exc}") from None
    return Presentation(dim, fns, str(obj.get("name", "")))


# ---------------------------------------------------------------------------
# points


def points_to_obj(points) -> list:
    out = []
    for p in points:
        z = np.asarray(p, dtype=np.complex128).reshape(-1)
        out.append([[float(c.real), float(c.imag)] for c in z])
    return out


def points_from_obj(obj) -> list:
    pts = []
    try:
        for p in obj:
            pts.append(np.array([complex(c[0], c[1]) for c in p]))
    except (TypeError, IndexError, ValueError) as exc:
        raise SchemaError(f"bad points array: {exc}") from None
    return pts
