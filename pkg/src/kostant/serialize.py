"""JSON schemas for matrices, moduli vectors, rep specs, and results.

Scalars: a plain number is a float; a string "p/q" (or "p") is an exact
rational. A complex entry is {"re": scalar, "im": scalar}. Matrices are
{"n": int, "entries": [[complex, ...], ...]} row-major, optionally with
"eigenvalues": [complex, ...] supplied externally for the exact path.
Moduli vectors are {"values": [scalar, ...]}. Rep specs:

    {"sym": m} | {"ext": k} | {"schur": [parts...]} | {"tensor": [a, b]}
    | {"dsum": [specs...]} | {"compose": {"outer": spec, "inner": spec}}

Serialization keeps a fixed field order and shortest round-trip float
formatting (Python's repr), so identical inputs produce byte-identical
reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cmjd import CmjdTriple
from .errors import ParseError
from .linalg import ComplexRational
from .order import (
    OrderVerdict,
    SeparatingFunctional,
    SeparatingWitness,
    TTransformCertificate,
)
from .symchar import (
    Compose,
    DirectSum,
    Ext,
    ModuliVector,
    Partition,
    RepSpec,
    Schur,
    Sym,
    Tensor,
)


@dataclass(frozen=True)
class MatrixInput:
    """Parsed matrix payload: float matrix, optional exact object matrix,
    and optional externally supplied eigenvalues."""

    matrix: np.ndarray
    exact_matrix: np.ndarray | None
    eigenvalues: list | None


# --- scalar parsing -----------------------------------------------------------


def parse_scalar(value, exact: bool):
    """Number -> float; "p/q" string -> Fraction (requires exact mode)."""
    if isinstance(value, bool):
        raise ParseError(f"expected a numeric scalar, got {value!r}")
    if isinstance(value, (int, float)):
        return Fraction(value) if exact and isinstance(value, int) else float(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}") from exc
    raise ParseError(f"expected a numeric scalar, got {value!r}")


def parse_complex(obj, exact: bool):
    """{"re": s, "im": s} -> complex (float mode) or ComplexRational."""
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        obj = {"re": obj, "im": 0}
    if not isinstance(obj, dict) or not set(obj) <= {"re", "im"}:
        raise ParseError(f"expected a complex entry, got {obj!r}")
    re = parse_scalar(obj.get("re", 0), exact)
    im = parse_scalar(obj.get("im", 0), exact)
    if exact:
        if not isinstance(re, Fraction) or not isinstance(im, Fraction):
            # floats are exact binary rationals; accept them
            re, im = Fraction(re), Fraction(im)
        return ComplexRational(re, im)
    return complex(float(re), float(im))


def scalar_to_json(value):
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def complex_to_json(z) -> dict:
    if isinstance(z, ComplexRational):
        return {"re": str(z.re), "im": str(z.im)}
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# --- matrices -------------------------------------------------------------------


def parse_matrix(obj, exact: bool = False) -> MatrixInput:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("matrix JSON must be an object with an 'entries' field")
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries:
        raise ParseError("matrix entries must be a nonempty list of rows")
    n = obj.get("n", len(entries))
    if len(entries) != n or any(not isinstance(r, list) or len(r) != n
                                for r in entries):
        raise ParseError(f"matrix entries must form an {n} x {n} array")
    parsed = [[parse_complex(e, exact) for e in row] for row in entries]
    matrix = np.array([[complex(e) for e in row] for row in parsed],
                      dtype=complex)
    exact_matrix = (np.array(parsed, dtype=object) if exact else None)
    eigenvalues = None
    if "eigenvalues" in obj:
        raw = obj["eigenvalues"]
        if not isinstance(raw, list) or len(raw) != n:
            raise ParseError("eigenvalues must list one value per dimension")
        eigenvalues = [parse_complex(e, exact) for e in raw]
    return MatrixInput(matrix=matrix, exact_matrix=exact_matrix,
                       eigenvalues=eigenvalues)


def matrix_to_json(m) -> dict:
    m = np.asarray(m)
    n = m.shape[0]
    return {
        "n": n,
        "entries": [[complex_to_json(m[i, j]) for j in range(n)]
                    for i in range(n)],
    }


# --- moduli vectors ---------------------------------------------------------------


def parse_moduli(obj, exact: bool = False) -> ModuliVector:
    if not isinstance(obj, dict) or "values" not in obj:
        raise ParseError("moduli JSON must be an object with a 'values' field")
    values = [parse_scalar(v, exact) for v in obj["values"]]
    if not values:
        raise ParseError("moduli values must be nonempty")
    return ModuliVector.from_values(values)


def moduli_to_json(v: ModuliVector) -> dict:
    return {"values": [scalar_to_json(x) for x in v.values]}


# --- rep specs ----------------------------------------------------------------------


def parse_repspec(obj) -> RepSpec:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError(f"rep spec must be a single-key object, got {obj!r}")
    (key, value), = obj.items()
    if key == "sym":
        return Sym(int(value))
    if key == "ext":
        return Ext(int(value))
    if key == "schur":
        return Schur(Partition(tuple(int(p) for p in value)))
    if key == "tensor":
        if not isinstance(value, list) or len(value) != 2:
            raise ParseError("tensor takes a two-element list")
        return Tensor(parse_repspec(value[0]), parse_repspec(value[1]))
    if key == "dsum":
        if not isinstance(value, list) or not value:
            raise ParseError("dsum takes a nonempty list")
        return DirectSum(tuple(parse_repspec(v) for v in value))
    if key == "compose":
        if not isinstance(value, dict) or set(value) != {"outer", "inner"}:
            raise ParseError("compose takes {'outer': ..., 'inner': ...}")
        return Compose(parse_repspec(value["outer"]), parse_repspec(value["inner"]))
    raise ParseError(f"unknown rep spec kind {key!r}")


def repspec_to_json(spec: RepSpec):
    if isinstance(spec, Sym):
        return {"sym": spec.m}
    if isinstance(spec, Ext):
        return {"ext": spec.k}
    if isinstance(spec, Schur):
        return {"schur": list(spec.shape.parts)}
    if isinstance(spec, Tensor):
        return {"tensor": [repspec_to_json(spec.left), repspec_to_json(spec.right)]}
    if isinstance(spec, DirectSum):
        return {"dsum": [repspec_to_json(p) for p in spec.parts]}
    if isinstance(spec, Compose):
        return {"compose": {"outer": repspec_to_json(spec.outer),
                            "inner": repspec_to_json(spec.inner)}}
    raise TypeError(f"unknown rep spec {spec!r}")


# --- results ------------------------------------------------------------------------


def triple_to_json(triple: CmjdTriple) -> dict:
    return {
        "n": triple.dim,
        "elliptic": matrix_to_json(triple.elliptic),
        "hyperbolic": matrix_to_json(triple.hyperbolic),
        "unipotent": matrix_to_json(triple.unipotent),
        "residuals": {k: float(v) for k, v in sorted(triple.residuals.items())},
    }


def verdict_to_json(verdict: OrderVerdict) -> dict:
    out: dict = {"relation": verdict.relation}
    if verdict.failing_level is not None:
        out["failing_level"] = verdict.failing_level
    return out


def certificate_to_json(cert: TTransformCertificate) -> dict:
    return {
        "steps": [{"i": i, "j": j, "t": scalar_to_json(t)}
                  for i, j, t in cert.steps],
        "start": [scalar_to_json(v) for v in cert.start.values],
        "end": [scalar_to_json(v) for v in cert.end.values],
    }


def functional_to_json(func: SeparatingFunctional) -> dict:
    return {"k": func.k, "margin": float(func.margin)}


def witness_to_json(witness: SeparatingWitness) -> dict:
    return {
        "k": witness.k,
        "m": witness.m,
        "spec": repspec_to_json(witness.spec),
        "chi1": scalar_to_json(witness.chi_1),
        "chi2": scalar_to_json(witness.chi_2),
        "paper_bound_m": witness.paper_bound_m,
        "dimension": witness.dimension,
    }


def dumps(report: dict) -> str:
    """Deterministic report text: fixed field order, repr floats."""
    return json.dumps(report, indent=2, allow_nan=False) + "\n"
