"""Shared generators and independent brute-force oracles for the tests.

Oracles here are deliberately naive (full enumeration over monomials,
tableaux, or permutation vertices) so they stay independent of the
library's evaluation paths.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import numpy as np
import pytest

from kostant import ModuliVector, apply_t_transforms


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# --- random inputs ------------------------------------------------------------


def random_invertible(rng, n: int, cond_cap: float = 1e6) -> np.ndarray:
    """Complex Ginibre matrix, resampled until the condition number is tame."""
    while True:
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        sv = np.linalg.svd(g, compute_uv=False)
        if sv[-1] > 0 and sv[0] / sv[-1] <= cond_cap:
            return g


def random_sl(rng, n: int, cond_cap: float = 1e6) -> np.ndarray:
    g = random_invertible(rng, n, cond_cap)
    det = np.linalg.det(g)
    return g / det ** (1.0 / n)


def random_unipotent(rng, n: int, scale: float = 0.5) -> np.ndarray:
    u = np.eye(n, dtype=complex)
    upper = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    u += scale * np.triu(upper, k=1)
    return u


def random_unipotent_exact(rng, n: int) -> np.ndarray:
    u = np.array([[Fraction(1 if i == j else 0) for j in range(n)]
                  for i in range(n)], dtype=object)
    for i in range(n):
        for j in range(i + 1, n):
            u[i, j] = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
    return u


def random_unitary(rng, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_sl_moduli(rng, n: int, spread: float = 1.0) -> ModuliVector:
    logs = spread * rng.normal(size=n)
    logs -= logs.mean()
    return ModuliVector.from_values(np.exp(logs))


def rational_zero_sum_logs(rng, n: int, denominator: int = 4,
                           magnitude: int = 8) -> list[Fraction]:
    """Zero-sum vector of rationals with a fixed small denominator."""
    while True:
        nums = [int(rng.integers(-magnitude, magnitude + 1)) for _ in range(n - 1)]
        nums.append(-sum(nums))
        if abs(nums[-1]) <= 2 * magnitude:
            return sorted((Fraction(v, denominator) for v in nums), reverse=True)


def mixed_logs(rng, logs: list, steps: int | None = None) -> list:
    """Apply random exact T-transforms: result stays inside the hull."""
    n = len(logs)
    out = list(logs)
    for _ in range(steps if steps is not None else n):
        i, j = rng.choice(n, size=2, replace=False)
        t = Fraction(int(rng.integers(0, 9)), 8)
        vi, vj = out[i], out[j]
        out[i] = t * vi + (1 - t) * vj
        out[j] = (1 - t) * vi + t * vj
    return out


def dominated_moduli_pair(rng, n: int, spread: float = 1.0):
    """(x, y) with x dominating y: log y is a doubly stochastic mix of log x."""
    x = random_sl_moduli(rng, n, spread)
    logs = list(np.log(x.as_floats()))
    mixed = mixed_logs(rng, logs)
    y = ModuliVector.from_values(np.exp(np.array([float(v) for v in mixed])))
    return x, y


# --- brute-force oracles ---------------------------------------------------------


def brute_force_h(m: int, values) -> Fraction:
    """Sum of all degree-m monomials, by full enumeration."""
    total = Fraction(0)
    for combo in combinations_with_replacement(values, m):
        term = Fraction(1)
        for v in combo:
            term *= Fraction(v)
        total += term
    return total


def monomial_count(m: int, n: int) -> int:
    return sum(1 for _ in combinations_with_replacement(range(n), m))


def enumerate_ssyt(shape: tuple[int, ...], n: int):
    """All semistandard tableaux of the shape with entries in 1..n."""
    rows = len(shape)

    def fill(row_idx: int, tableau: tuple):
        if row_idx == rows:
            yield tableau
            return
        length = shape[row_idx]

        def fill_row(col_idx: int, row: tuple):
            if col_idx == length:
                yield from fill(row_idx + 1, tableau + (row,))
                return
            lo = 1
            if col_idx > 0:
                lo = max(lo, row[col_idx - 1])
            if row_idx > 0:
                lo = max(lo, tableau[row_idx - 1][col_idx] + 1)
            for v in range(lo, n + 1):
                yield from fill_row(col_idx + 1, row + (v,))

        yield from fill_row(0, ())

    yield from fill(0, ())


def brute_force_schur(shape: tuple[int, ...], values) -> Fraction:
    total = Fraction(0)
    for tableau in enumerate_ssyt(shape, len(values)):
        term = Fraction(1)
        for row in tableau:
            for v in row:
                term *= Fraction(values[v - 1])
        total += term
    return total


def hull_member_oracle(x_logs, y_logs) -> bool:
    """Exact LP-free membership of y in conv(all permutations of x).

    Trusted-checker route: the library's certificate output is validated
    here by exact replay (membership) or by evaluating the separating
    top-k functional on every permutation vertex (non-membership).
    """
    from kostant import (SeparatingFunctional, permutohedron_certificate)

    xs = sorted(x_logs, reverse=True)
    ys = sorted(y_logs, reverse=True)
    result = permutohedron_certificate(xs, ys)
    if isinstance(result, SeparatingFunctional):
        k = result.k
        value_at_y = sum(ys[:k])
        hull_max = max(sum(sorted(p, reverse=True)[:k])
                       for p in set(permutations(xs)))
        assert value_at_y - hull_max > 0, "separating functional is invalid"
        return False
    replayed = apply_t_transforms(result.start.values, result.steps)
    assert list(replayed) == list(ys), "certificate replay failed"
    return True
