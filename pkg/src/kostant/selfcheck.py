"""Bundled invariant suites at desk scale.

Each suite replays a core guarantee on small random inputs with a fixed
seed: projector algebra, decomposition round trips, character values
against brute-force enumeration, order decisions against the
exterior-power radius test, and witness construction on non-dominated
pairs. The fault-injection flag perturbs the unipotent factor before
validation so the reconstruction check must fail (used to test failure
plumbing end to end).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .cmjd import cmjd, validate_cmjd
from .linalg import mat_norm, spectral_projectors
from .order import (
    EQUAL,
    GEQ,
    SeparatingFunctional,
    find_separating_character,
    kostant_compare,
    permutohedron_certificate,
    verify_certificate,
)
from .symchar import (
    Ext,
    ModuliVector,
    complete_homogeneous,
    elementary,
    schur,
    spectral_radius_rep,
)

SUITE_NAMES = ("projectors", "cmjd", "characters", "order", "witness")


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def run_suites(names=None, inject_fault: bool = False,
               seed: int = 20240 ) -> list[SuiteResult]:
    selected = SUITE_NAMES if names is None else tuple(names)
    unknown = set(selected) - set(SUITE_NAMES)
    if unknown:
        raise ValueError(f"unknown suite(s) {sorted(unknown)}; "
                         f"available: {list(SUITE_NAMES)}")
    rng = np.random.default_rng(seed)
    out = []
    for name in SUITE_NAMES:
        if name not in selected:
            continue
        runner = _RUNNERS[name]
        if name == "cmjd":
            out.append(runner(rng, inject_fault))
        else:
            out.append(runner(rng))
    return out


def _random_sl(rng, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    det = np.linalg.det(g)
    return g / det ** (1.0 / n)


def _suite_projectors(rng) -> SuiteResult:
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(2, 6))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        decomp = spectral_projectors(a)
        worst = max(worst, decomp.residual / mat_norm(a))
    passed = worst <= 1e-8
    return SuiteResult("projectors", passed,
                       f"worst relative projector residual {worst:.3e}")


def _suite_cmjd(rng, inject_fault: bool) -> SuiteResult:
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(2, 6))
        g = _random_sl(rng, n)
        triple = cmjd(g)
        if inject_fault:
            bad = triple.unipotent.copy()
            bad[0, -1] += 1e-6
            triple = type(triple)(triple.elliptic, triple.hyperbolic, bad,
                                  triple.residuals)
        report = validate_cmjd(g, triple)
        if not report.passed:
            failing = [k for k, ok in report.checks.items() if not ok]
            return SuiteResult("cmjd", False,
                               f"validation failed: {failing}")
        worst = max(worst, report.residuals["reconstruction"] / mat_norm(g))
    return SuiteResult("cmjd", True,
                       f"worst relative reconstruction residual {worst:.3e}")


def _brute_force_h(m: int, values) -> Fraction:
    total = Fraction(0)
    for combo in combinations_with_replacement(values, m):
        term = Fraction(1)
        for v in combo:
            term *= v
        total += term
    return total


def _suite_characters(rng) -> SuiteResult:
    for n in (2, 3):
        for m in range(5):
            x = ModuliVector.from_values(
                [Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4)))
                 for _ in range(n)])
            expected = _brute_force_h(m, x.values)
            if complete_homogeneous(m, x) != expected:
                return SuiteResult("characters", False,
                                   f"h_{m} mismatch on {x.values}")
            count = sum(1 for _ in combinations_with_replacement(range(n), m))
            if count != math.comb(m + n - 1, n - 1):
                return SuiteResult("characters", False, "monomial count off")
    x = ModuliVector.from_values([Fraction(2), Fraction(1)])
    checks = (
        complete_homogeneous(2, x) == Fraction(7),
        elementary(2, ModuliVector.from_values([1, 2, 3])) == Fraction(11),
        schur((2, 1), x) == Fraction(6),
    )
    if not all(checks):
        return SuiteResult("characters", False, "anchor value mismatch")
    return SuiteResult("characters", True, "enumeration oracles agree")


def _random_sl_moduli(rng, n: int) -> ModuliVector:
    logs = rng.normal(size=n)
    logs -= logs.mean()
    return ModuliVector.from_values(np.exp(logs))


def _suite_order(rng) -> SuiteResult:
    for _ in range(25):
        n = int(rng.integers(2, 6))
        x = _random_sl_moduli(rng, n)
        y = _random_sl_moduli(rng, n)
        verdict = kostant_compare(x, y)
        radius_geq = all(
            float(spectral_radius_rep(Ext(k), x))
            >= float(spectral_radius_rep(Ext(k), y)) * (1 - 1e-9)
            for k in range(1, n + 1))
        if (verdict.relation in (GEQ, EQUAL)) != radius_geq:
            return SuiteResult("order", False,
                               f"radius test disagrees on {x.values} vs {y.values}")
        if verdict.relation in (GEQ, EQUAL):
            cert = permutohedron_certificate(
                [math.log(v) for v in x.values],
                [math.log(v) for v in y.values])
            if isinstance(cert, SeparatingFunctional):
                return SuiteResult("order", False,
                                   "dominated pair produced a separating functional")
            if verify_certificate(cert) > 1e-12:
                return SuiteResult("order", False, "certificate replay failed")
    return SuiteResult("order", True, "radius test and certificates agree")


def _suite_witness(rng) -> SuiteResult:
    found = 0
    attempts = 0
    while found < 10 and attempts < 200:
        attempts += 1
        n = int(rng.integers(2, 5))
        x = _random_sl_moduli(rng, n)
        y = _random_sl_moduli(rng, n)
        if kostant_compare(x, y).relation in (GEQ, EQUAL):
            continue
        witness = find_separating_character(x, y)
        if not float(witness.chi_1) < float(witness.chi_2):
            return SuiteResult("witness", False, "chi_1 >= chi_2")
        if witness.m > witness.paper_bound_m:
            return SuiteResult("witness", False, "m exceeds the paper bound")
        found += 1
    if found < 10:
        return SuiteResult("witness", False, "too few non-dominated pairs found")
    return SuiteResult("witness", True, f"{found} witnesses validated")


_RUNNERS = {
    "projectors": _suite_projectors,
    "cmjd": _suite_cmjd,
    "characters": _suite_characters,
    "order": _suite_order,
    "witness": _suite_witness,
}
