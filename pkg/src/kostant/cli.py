"""Command-line front end.

Subcommands: decompose, order, char, witness, certify, selfcheck.
Inputs are JSON files (matrix or moduli payloads, auto-detected by their
'entries' / 'values' field). Reports are deterministic JSON on stdout or
--out. Exit codes: 0 success, 1 mathematical negative (order fails /
order holds when a witness was requested / not a hull member), 2 input
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import serialize
from .cmjd import cmjd
from .errors import (
    BadIndex,
    DimensionCap,
    IllConditioned,
    KostantError,
    LengthMismatch,
    NonConvergence,
    NonPositive,
    NotHyperbolic,
    NotSeparable,
    NotUnipotent,
    OrderHolds,
    Overflow,
    ParseError,
    PreconditionFailed,
    Singular,
    SumMismatch,
)
from .order import (
    EQUAL,
    GEQ,
    SeparatingFunctional,
    find_separating_character,
    kostant_compare,
    permutohedron_certificate,
)
from .selfcheck import run_suites
from .symchar import (
    ModuliVector,
    abs_character,
    matrix_moduli,
    moduli_from_eigenvalues,
    rep_dim,
    spectral_radius_rep,
)

INPUT_ERRORS = (ParseError, LengthMismatch, NonPositive, BadIndex,
                SumMismatch, PreconditionFailed, DimensionCap, ValueError)
NUMERICAL_ERRORS = (NonConvergence, IllConditioned, Singular, NotUnipotent,
                    NotHyperbolic, Overflow)


@dataclass
class JobConfig:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    tol: float = 1e-8
    exact: bool = False
    dim_cap: int = 10 ** 6
    out: str | None = None
    suites: tuple[str, ...] | None = None
    inject_fault: bool = False

    def __post_init__(self):
        if self.tol <= 0:
            raise ParseError("tol must be positive")
        if self.dim_cap < 1:
            raise ParseError("dim-cap must be at least 1")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}") from exc


def _load_moduli(path: str, config: JobConfig) -> ModuliVector:
    """Moduli from either a moduli payload or a matrix payload."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "values" in obj:
        return serialize.parse_moduli(obj, exact=config.exact)
    payload = serialize.parse_matrix(obj, exact=config.exact)
    if config.exact and payload.eigenvalues is not None:
        return moduli_from_eigenvalues(payload.eigenvalues)
    return matrix_moduli(payload.matrix, cluster_tol=config.tol)


def run(config: JobConfig) -> tuple[int, dict]:
    """Execute one job; returns (exit code, JSON-ready report)."""
    try:
        handler = _HANDLERS[config.command]
    except KeyError:
        raise ParseError(f"unknown command {config.command!r}") from None
    try:
        return handler(config)
    except OrderHolds as exc:
        return 1, _error_report(config, exc)
    except NotSeparable as exc:
        return 1, _error_report(config, exc)
    except INPUT_ERRORS as exc:
        return 2, _error_report(config, exc)
    except NUMERICAL_ERRORS as exc:
        return 3, _error_report(config, exc)


def _error_report(config: JobConfig, exc: Exception) -> dict:
    return {"command": config.command, "error": type(exc).__name__,
            "message": str(exc)}


def _run_decompose(config: JobConfig) -> tuple[int, dict]:
    payload = serialize.parse_matrix(_load_json(config.inputs["g"]),
                                     exact=config.exact)
    triple = cmjd(payload.matrix, tol=config.tol)
    report = {"command": "decompose", "tol": config.tol}
    report.update(serialize.triple_to_json(triple))
    return 0, report


def _run_order(config: JobConfig) -> tuple[int, dict]:
    x = _load_moduli(config.inputs["g1"], config)
    y = _load_moduli(config.inputs["g2"], config)
    verdict = kostant_compare(x, y)
    report = {"command": "order"}
    report.update(serialize.verdict_to_json(verdict))
    report["moduli_1"] = serialize.moduli_to_json(x)["values"]
    report["moduli_2"] = serialize.moduli_to_json(y)["values"]
    code = 0 if verdict.relation in (GEQ, EQUAL) else 1
    return code, report


def _run_char(config: JobConfig) -> tuple[int, dict]:
    spec = serialize.parse_repspec(_load_json(config.inputs["spec"]))
    x = _load_moduli(config.inputs["x"], config)
    report = {
        "command": "char",
        "spec": serialize.repspec_to_json(spec),
        "dimension": rep_dim(spec, x.n),
        "abs_character": serialize.scalar_to_json(
            abs_character(spec, x, cap=config.dim_cap)),
        "spectral_radius": serialize.scalar_to_json(
            spectral_radius_rep(spec, x, cap=config.dim_cap)),
    }
    return 0, report


def _run_witness(config: JobConfig) -> tuple[int, dict]:
    x = _load_moduli(config.inputs["h1"], config)
    y = _load_moduli(config.inputs["h2"], config)
    witness = find_separating_character(x, y, dim_cap=config.dim_cap)
    report = {"command": "witness"}
    report.update(serialize.witness_to_json(witness))
    return 0, report


def _run_certify(config: JobConfig) -> tuple[int, dict]:
    x = _load_moduli(config.inputs["x"], config)
    y = _load_moduli(config.inputs["y"], config)
    lx = [math.log(v) for v in x.as_floats()]
    ly = [math.log(v) for v in y.as_floats()]
    result = permutohedron_certificate(lx, ly)
    if isinstance(result, SeparatingFunctional):
        return 1, {"command": "certify", "member": False,
                   "functional": serialize.functional_to_json(result)}
    return 0, {"command": "certify", "member": True,
               "certificate": serialize.certificate_to_json(result)}


def _run_selfcheck(config: JobConfig) -> tuple[int, dict]:
    results = run_suites(names=config.suites,
                         inject_fault=config.inject_fault)
    report = {
        "command": "selfcheck",
        "suites": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                   for r in results],
        "passed": all(r.passed for r in results),
    }
    return (0 if report["passed"] else 3), report


_HANDLERS = {
    "decompose": _run_decompose,
    "order": _run_order,
    "char": _run_char,
    "witness": _run_witness,
    "certify": _run_certify,
    "selfcheck": _run_selfcheck,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kostant",
        description="Jordan decompositions, the log-majorization order, "
                    "and separating characters on SL_n(C).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8,
                       help="relative tolerance for residuals and clustering")
        p.add_argument("--exact", action="store_true",
                       help="parse rational inputs and compare exactly")
        p.add_argument("--dim-cap", type=int, default=10 ** 6,
                       help="largest admissible representation dimension")
        p.add_argument("--out", help="write the JSON report to this path")

    p = sub.add_parser("decompose", help="complete multiplicative Jordan "
                                         "decomposition of a matrix")
    p.add_argument("--g", required=True, help="matrix JSON file")
    common(p)

    p = sub.add_parser("order", help="decide the partial order between two "
                                     "elements (matrices or moduli)")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    common(p)

    p = sub.add_parser("char", help="evaluate a representation character on "
                                    "hyperbolic data")
    p.add_argument("--spec", required=True, help="rep spec JSON file")
    p.add_argument("--x", required=True, help="moduli or matrix JSON file")
    common(p)

    p = sub.add_parser("witness", help="construct a separating character for "
                                       "a non-dominated pair")
    p.add_argument("--h1", required=True)
    p.add_argument("--h2", required=True)
    common(p)

    p = sub.add_parser("certify", help="T-transform certificate or separating "
                                       "functional for hull membership")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    common(p)

    p = sub.add_parser("selfcheck", help="run the bundled invariant suites")
    p.add_argument("--suite", action="append", dest="suites",
                   help="run only this suite (repeatable)")
    p.add_argument("--inject-perturbation", action="store_true",
                   dest="inject_fault",
                   help="perturb a factor to force a validation failure")
    common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    inputs = {}
    for key in ("g", "g1", "g2", "spec", "x", "y", "h1", "h2"):
        value = getattr(args, key, None)
        if value is not None:
            inputs[key] = value
    return JobConfig(
        command=args.command,
        inputs=inputs,
        tol=args.tol,
        exact=args.exact,
        dim_cap=args.dim_cap,
        out=args.out,
        suites=tuple(args.suites) if getattr(args, "suites", None) else None,
        inject_fault=getattr(args, "inject_fault", False),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        code, report = run(config)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except KostantError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    text = serialize.dumps(report)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
