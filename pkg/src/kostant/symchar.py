"""Characters and eigenvalue-modulus data of finite-dimensional reps.

A hyperbolic group element is described, up to conjugacy, by its vector of
eigenvalue moduli. For a representation given as a RepSpec tree (symmetric
power, exterior power, Schur functor, tensor, direct sum, composition)
this module evaluates

  * rep_moduli      - the full multiset of eigenvalue moduli of pi(g),
  * abs_character   - their sum (equals the character on hyperbolic g),
  * spectral_radius_rep - their maximum,
  * rep_matrix      - explicit matrices of small representations.

Evaluation is exact over Fractions when the input moduli are rational,
and falls back to a log-domain path when float intermediates overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

import numpy as np
import scipy.linalg as sla

from .errors import BadIndex, DimensionCap, LengthMismatch, NonPositive, Overflow
from .linalg import as_matrix, eigen_spectrum, exact_modulus, to_complex

DEFAULT_MODULI_CAP = 10 ** 6
DEFAULT_MATRIX_CAP = 200
KOSTKA_WEIGHT_CAP = 12
FLOAT_GUARD = 1e300


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


# --- domain types -----------------------------------------------------------


@dataclass(frozen=True)
class ModuliVector:
    """Positive eigenvalue moduli sorted non-increasing.

    Entries are floats or Fractions; the vector is exact when every entry
    is rational. For SL_n data the product of entries is 1 (exactly in
    exact mode, within tolerance otherwise).
    """

    values: tuple

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("moduli vector must be nonempty")
        for v in self.values:
            if not v > 0:
                raise NonPositive(f"moduli must be strictly positive, got {v}")
        for a, b in zip(self.values, self.values[1:]):
            if a < b:
                raise ValueError("moduli must be sorted non-increasing")

    @classmethod
    def from_values(cls, values) -> "ModuliVector":
        """Coerce, sort non-increasing, and validate."""
        coerced = [Fraction(v) if isinstance(v, int) else v for v in values]
        coerced.sort(reverse=True)
        return cls(tuple(coerced))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for v in self.values)

    def product(self):
        result = Fraction(1) if self.exact else 1.0
        for v in self.values:
            result *= v
        return result

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)

    def as_fractions(self) -> tuple[Fraction, ...]:
        """Exact rational view; binary floats convert exactly."""
        return tuple(Fraction(v) for v in self.values)

    def log_values(self) -> tuple[float, ...]:
        return tuple(math.log(float(v)) for v in self.values)

    def normalized(self) -> "ModuliVector":
        """Scale to product 1 (geometric-mean division; float result)."""
        logs = self.log_values()
        mean = sum(logs) / len(logs)
        return ModuliVector.from_values(
            [math.exp(v - mean) for v in logs])


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of nonnegative integers (trailing zeros dropped)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        for p in self.parts:
            if not isinstance(p, int) or p < 0:
                raise ValueError(f"partition parts must be nonnegative ints, got {p}")
        for a, b in zip(self.parts, self.parts[1:]):
            if a < b:
                raise ValueError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts",
                           tuple(p for p in self.parts if p > 0))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)


class RepSpec:
    """Base of the representation-description tree."""

    __slots__ = ()


@dataclass(frozen=True)
class Sym(RepSpec):
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("symmetric power degree must be nonnegative")


@dataclass(frozen=True)
class Ext(RepSpec):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("exterior power index must be nonnegative")


@dataclass(frozen=True)
class Schur(RepSpec):
    shape: Partition


@dataclass(frozen=True)
class Tensor(RepSpec):
    left: RepSpec
    right: RepSpec


@dataclass(frozen=True)
class DirectSum(RepSpec):
    parts: tuple[RepSpec, ...]

    def __post_init__(self):
        if len(self.parts) == 0:
            raise ValueError("direct sum needs at least one part")


@dataclass(frozen=True)
class Compose(RepSpec):
    outer: RepSpec
    inner: RepSpec


def rep_dim(spec: RepSpec, n: int) -> int:
    """Dimension of the representation on an n-dimensional input."""
    if isinstance(spec, Sym):
        return math.comb(n + spec.m - 1, spec.m)
    if isinstance(spec, Ext):
        if spec.k > n:
            raise BadIndex(f"exterior power {spec.k} exceeds dimension {n}")
        return math.comb(n, spec.k)
    if isinstance(spec, Schur):
        return _schur_dimension(spec.shape, n)
    if isinstance(spec, Tensor):
        return rep_dim(spec.left, n) * rep_dim(spec.right, n)
    if isinstance(spec, DirectSum):
        return sum(rep_dim(p, n) for p in spec.parts)
    if isinstance(spec, Compose):
        return rep_dim(spec.outer, rep_dim(spec.inner, n))
    raise TypeError(f"unknown rep spec {spec!r}")


def _schur_dimension(shape: Partition, n: int) -> int:
    """Number of semistandard tableaux of the shape with entries <= n."""
    if shape.length > n:
        return 0
    # hook content formula: prod (n + j - i) / hook(i, j)
    num = Fraction(1)
    parts = shape.parts
    conj = _conjugate(parts)
    for i, row in enumerate(parts):
        for j in range(row):
            hook = (row - j) + (conj[j] - i) - 1
            num *= Fraction(n + j - i, hook)
    assert num.denominator == 1
    return int(num)


def _conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > j) for j in range(parts[0]))


# --- symmetric-function evaluation -------------------------------------------


def complete_homogeneous(m: int, x, *, log_fallback: bool = True):
    """h_m(x_1, ..., x_n): the sum of all degree-m monomials.

    Uses the two-index recurrence
    h_m(x_1..x_k) = h_m(x_1..x_{k-1}) + x_k * h_{m-1}(x_1..x_k),
    exact over Fractions for exact input. The float path has relative
    error at most about n*m*eps (all terms positive); if an intermediate
    exceeds the float guard the computation restarts in log domain, and
    Overflow is raised if even the final value is unrepresentable or the
    fallback is disabled.
    """
    x = _as_moduli(x)
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if x.exact:
        return _h_exact(m, x.as_fractions())
    values = x.as_floats()
    result = _h_float(m, values)
    if result is not None:
        return result
    if not log_fallback:
        raise Overflow(f"h_{m} exceeds float range and log fallback is disabled")
    log_result = _h_log(m, values)
    if log_result > math.log(FLOAT_GUARD) + 18:  # ~log of float max
        raise Overflow(
            f"h_{m} exceeds float range; use complete_homogeneous_log")
    return math.exp(log_result)


def complete_homogeneous_log(m: int, x) -> float:
    """Natural log of h_m(x); safe for values far beyond float range."""
    x = _as_moduli(x)
    if m < 0:
        raise ValueError("degree must be nonnegative")
    return _h_log(m, x.as_floats())


def _h_exact(m: int, values: tuple[Fraction, ...]) -> Fraction:
    n = len(values)
    prev = [Fraction(1)] * (n + 1)  # degree 0 row
    for _ in range(m):
        cur = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            cur[k] = cur[k - 1] + values[k - 1] * prev[k]
        prev = cur
    return prev[n]


def _h_float(m: int, values: tuple[float, ...]) -> float | None:
    """Linear-domain DP; None when an intermediate exceeds the guard."""
    n = len(values)
    prev = [1.0] * (n + 1)
    for _ in range(m):
        cur = [0.0] * (n + 1)
        for k in range(1, n + 1):
            cur[k] = cur[k - 1] + values[k - 1] * prev[k]
            if cur[k] > FLOAT_GUARD:
                return None
        prev = cur
    return prev[n]


def _h_log(m: int, values: tuple[float, ...]) -> float:
    n = len(values)
    logs = [math.log(v) for v in values]
    prev = [0.0] * (n + 1)
    for _ in range(m):
        cur = [-math.inf] * (n + 1)
        for k in range(1, n + 1):
            cur[k] = float(np.logaddexp(cur[k - 1], logs[k - 1] + prev[k]))
        prev = cur
    return prev[n]


def elementary(k: int, x):
    """e_k(x): sum over k-subsets of products; e_0 = 1, e_n = product."""
    x = _as_moduli(x)
    if k < 0 or k > x.n:
        raise BadIndex(f"elementary index {k} outside [0, {x.n}]")
    values = x.as_fractions() if x.exact else x.as_floats()
    one = Fraction(1) if x.exact else 1.0
    zero = Fraction(0) if x.exact else 0.0
    row = [one] + [zero] * k  # e_j of the empty prefix
    for v in values:
        for j in range(min(k, len(row) - 1), 0, -1):
            row[j] = row[j] + v * row[j - 1]
    return row[k]


def schur(shape: Partition, x):
    """Schur polynomial s_shape(x) via the Jacobi-Trudi determinant.

    det(h_{shape_i - i + j}) over i, j = 1..len(shape). Exact input gives
    an exact rational value. In float mode a determinant whose magnitude
    falls under 1e-8 of its Hadamard bound has lost significance and is
    recomputed exactly from the (exactly rational) float inputs.
    """
    x = _as_moduli(x)
    shape = _as_partition(shape)
    if shape.length > x.n:
        raise LengthMismatch(
            f"partition length {shape.length} exceeds vector length {x.n}")
    if shape.length == 0:
        return Fraction(1) if x.exact else 1.0
    if x.exact:
        return _jacobi_trudi_exact(shape, x.as_fractions())
    ell = shape.length
    entries = [[_h_or_zero_float(shape.parts[i] - i + j, x)
                for j in range(ell)] for i in range(ell)]
    matrix = np.array(entries, dtype=float)
    if not np.all(np.isfinite(matrix)):
        return float(_jacobi_trudi_exact(shape, x.as_fractions()))
    det = float(np.linalg.det(matrix))
    hadamard = float(np.prod([np.linalg.norm(row) for row in matrix]))
    if hadamard > 0 and abs(det) < 1e-8 * hadamard:
        # all significant digits cancelled; retry exactly
        return float(_jacobi_trudi_exact(shape, x.as_fractions()))
    return det


def _h_or_zero_float(m: int, x: ModuliVector) -> float:
    if m < 0:
        return 0.0
    return float(complete_homogeneous(m, x))


def _jacobi_trudi_exact(shape: Partition, values: tuple[Fraction, ...]) -> Fraction:
    ell = shape.length
    mv = ModuliVector.from_values(values)
    cache: dict[int, Fraction] = {}

    def h(m: int) -> Fraction:
        if m < 0:
            return Fraction(0)
        if m not in cache:
            cache[m] = _h_exact(m, mv.as_fractions())
        return cache[m]

    matrix = [[h(shape.parts[i] - i + j) for j in range(ell)] for i in range(ell)]
    return _fraction_det(matrix)


def _fraction_det(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


# --- Kostka numbers -----------------------------------------------------------


@lru_cache(maxsize=None)
def kostka_number(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of the shape with the given content.

    Content may be any composition; the count only depends on its sorted
    order. Computed by peeling the last content part as a horizontal strip.
    """
    shape = tuple(p for p in shape if p > 0)
    content = tuple(c for c in content if c > 0)
    if sum(shape) != sum(content):
        return 0
    if not shape:
        return 1
    last = content[-1]
    rest = content[:-1]
    total = 0
    for inner in _horizontal_strip_removals(shape, last):
        total += kostka_number(inner, rest)
    return total


def _horizontal_strip_removals(shape: tuple[int, ...], size: int):
    """All partitions nu <= shape with shape/nu a horizontal strip of the size."""
    rows = len(shape)

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == rows:
            if remaining == 0:
                yield tuple(p for p in prefix if p > 0)
            return
        below = shape[i + 1] if i + 1 < rows else 0
        lo = max(below, shape[i] - remaining)
        hi = shape[i] if i == 0 else min(shape[i], prefix[-1])
        # interlacing: below <= nu_i <= shape_i, nu weakly decreasing
        for v in range(hi, lo - 1, -1):
            yield from rec(i + 1, remaining - (shape[i] - v), prefix + (v,))

    yield from rec(0, size, ())


# --- representation moduli and characters --------------------------------------


def rep_moduli(spec: RepSpec, x, cap: int | None = DEFAULT_MODULI_CAP) -> ModuliVector:
    """Multiset of eigenvalue moduli of pi(g) for hyperbolic data x.

    Sym(m) gives all degree-m products, Ext(k) all k-subset products,
    Schur the weight multiset with Kostka multiplicities, Tensor pairwise
    products, DirectSum concatenation, Compose evaluates outer on the
    inner moduli. Result sorted non-increasing.
    """
    x = _as_moduli(x)
    if cap is not None:
        d = rep_dim(spec, x.n)
        if d > cap:
            raise DimensionCap(f"representation dimension {d} exceeds cap {cap}")
    values = _rep_moduli_values(spec, x, cap)
    return ModuliVector.from_values(values)


def _rep_moduli_values(spec: RepSpec, x: ModuliVector, cap: int | None) -> list:
    one = Fraction(1) if x.exact else 1.0
    if isinstance(spec, Sym):
        return [_product(combo, one)
                for combo in combinations_with_replacement(x.values, spec.m)]
    if isinstance(spec, Ext):
        if spec.k > x.n:
            raise BadIndex(f"exterior power {spec.k} exceeds dimension {x.n}")
        return [_product(combo, one) for combo in combinations(x.values, spec.k)]
    if isinstance(spec, Schur):
        return _schur_moduli(spec.shape, x)
    if isinstance(spec, Tensor):
        left = _rep_moduli_values(spec.left, x, cap)
        right = _rep_moduli_values(spec.right, x, cap)
        return [a * b for a in left for b in right]
    if isinstance(spec, DirectSum):
        out: list = []
        for part in spec.parts:
            out.extend(_rep_moduli_values(part, x, cap))
        return out
    if isinstance(spec, Compose):
        inner = rep_moduli(spec.inner, x, cap)
        return _rep_moduli_values(spec.outer, inner, cap)
    raise TypeError(f"unknown rep spec {spec!r}")


def _product(values, one):
    result = one
    for v in values:
        result = result * v
    return result


def _schur_moduli(shape: Partition, x: ModuliVector) -> list:
    if shape.length > x.n:
        raise LengthMismatch(
            f"partition length {shape.length} exceeds vector length {x.n}")
    if shape.weight > KOSTKA_WEIGHT_CAP:
        raise DimensionCap(
            f"Schur moduli computed only for |shape| <= {KOSTKA_WEIGHT_CAP}")
    one = Fraction(1) if x.exact else 1.0
    out: list = []
    for content in _compositions(shape.weight, x.n):
        mult = kostka_number(shape.parts, tuple(sorted(content, reverse=True)))
        if mult == 0:
            continue
        value = one
        for v, c in zip(x.values, content):
            value = value * v ** c
        out.extend([value] * mult)
    return out


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def abs_character(spec: RepSpec, x, cap: int | None = DEFAULT_MODULI_CAP):
    """Sum of eigenvalue moduli of pi(g): the character value on hyperbolic g.

    Evaluated through symmetric-function identities (h_m, e_k, s_shape)
    rather than by enumerating the moduli multiset, so large symmetric
    powers stay cheap.
    """
    x = _as_moduli(x)
    if cap is not None:
        d = rep_dim(spec, x.n)
        if d > cap:
            raise DimensionCap(f"representation dimension {d} exceeds cap {cap}")
    return _abs_character(spec, x, cap)


def _abs_character(spec: RepSpec, x: ModuliVector, cap: int | None):
    if isinstance(spec, Sym):
        return complete_homogeneous(spec.m, x)
    if isinstance(spec, Ext):
        return elementary(spec.k, x)
    if isinstance(spec, Schur):
        return schur(spec.shape, x)
    if isinstance(spec, Tensor):
        return _abs_character(spec.left, x, cap) * _abs_character(spec.right, x, cap)
    if isinstance(spec, DirectSum):
        total = _abs_character(spec.parts[0], x, cap)
        for part in spec.parts[1:]:
            total = total + _abs_character(part, x, cap)
        return total
    if isinstance(spec, Compose):
        inner = rep_moduli(spec.inner, x, cap)
        return _abs_character(spec.outer, inner, cap)
    raise TypeError(f"unknown rep spec {spec!r}")


def spectral_radius_rep(spec: RepSpec, x, cap: int | None = DEFAULT_MODULI_CAP):
    """Largest eigenvalue modulus of pi(g) for hyperbolic data x."""
    x = _as_moduli(x)
    if cap is not None:
        d = rep_dim(spec, x.n)
        if d > cap:
            raise DimensionCap(f"representation dimension {d} exceeds cap {cap}")
    return _spectral_radius(spec, x, cap)


def _spectral_radius(spec: RepSpec, x: ModuliVector, cap: int | None):
    one = Fraction(1) if x.exact else 1.0
    if isinstance(spec, Sym):
        return x.values[0] ** spec.m if spec.m > 0 else one
    if isinstance(spec, Ext):
        if spec.k > x.n:
            raise BadIndex(f"exterior power {spec.k} exceeds dimension {x.n}")
        return _product(x.values[:spec.k], one)
    if isinstance(spec, Schur):
        if spec.shape.length > x.n:
            raise LengthMismatch(
                f"partition length {spec.shape.length} exceeds vector length {x.n}")
        # dominant weight: largest moduli get the largest exponents
        result = one
        for v, p in zip(x.values, spec.shape.parts):
            result = result * v ** p
        return result
    if isinstance(spec, Tensor):
        return _spectral_radius(spec.left, x, cap) * _spectral_radius(spec.right, x, cap)
    if isinstance(spec, DirectSum):
        return max(_spectral_radius(part, x, cap) for part in spec.parts)
    if isinstance(spec, Compose):
        inner = rep_moduli(spec.inner, x, cap)
        return _spectral_radius(spec.outer, inner, cap)
    raise TypeError(f"unknown rep spec {spec!r}")


# --- explicit matrices ----------------------------------------------------------


def rep_matrix(spec: RepSpec, a, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Matrix of pi(A) in the monomial / wedge basis.

    Supported specs: Sym(m), Ext(k), and Tensor / DirectSum combinations
    of those. The construction is multiplicative:
    rep_matrix(spec, A @ B) = rep_matrix(spec, A) @ rep_matrix(spec, B).
    """
    m = to_complex(as_matrix(a))
    n = m.shape[0]
    d = rep_dim(spec, n)
    if d > cap:
        raise DimensionCap(f"representation dimension {d} exceeds cap {cap}")
    return _rep_matrix(spec, m)


def _rep_matrix(spec: RepSpec, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if isinstance(spec, Sym):
        return _sym_power_matrix(m, spec.m)
    if isinstance(spec, Ext):
        if spec.k > n:
            raise BadIndex(f"exterior power {spec.k} exceeds dimension {n}")
        return _ext_power_matrix(m, spec.k)
    if isinstance(spec, Tensor):
        return np.kron(_rep_matrix(spec.left, m), _rep_matrix(spec.right, m))
    if isinstance(spec, DirectSum):
        return sla.block_diag(*[_rep_matrix(part, m) for part in spec.parts])
    raise TypeError(
        f"rep_matrix supports Sym, Ext, Tensor, DirectSum; got {spec!r}")


def _ext_power_matrix(m: np.ndarray, k: int) -> np.ndarray:
    """k-th compound matrix: entries are k x k minors (Cauchy-Binet)."""
    n = m.shape[0]
    basis = list(combinations(range(n), k))
    out = np.empty((len(basis), len(basis)), dtype=complex)
    for r, rows in enumerate(basis):
        for c, cols in enumerate(basis):
            if k == 0:
                out[r, c] = 1.0
            else:
                out[r, c] = np.linalg.det(m[np.ix_(rows, cols)])
    return out


def _sym_power_matrix(m: np.ndarray, power: int) -> np.ndarray:
    """m-th symmetric power in the monomial basis.

    Column for the basis monomial e_{i_1}...e_{i_m} is the expansion of
    (A e_{i_1}) ... (A e_{i_m}) as a commutative polynomial in the e's;
    substitution is an algebra map, hence the construction is
    multiplicative.
    """
    n = m.shape[0]
    basis = list(combinations_with_replacement(range(n), power))
    index = {mono: i for i, mono in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    for c, mono in enumerate(basis):
        poly: dict[tuple[int, ...], complex] = {(): 1.0 + 0j}
        for i in mono:
            nxt: dict[tuple[int, ...], complex] = {}
            for key, coeff in poly.items():
                for row in range(n):
                    entry = m[row, i]
                    if entry == 0:
                        continue
                    new_key = tuple(sorted(key + (row,)))
                    nxt[new_key] = nxt.get(new_key, 0j) + coeff * entry
            poly = nxt
        for key, coeff in poly.items():
            out[index[key], c] = coeff
    return out


# --- matrix -> moduli pipeline ---------------------------------------------------


def matrix_moduli(g, cluster_tol: float = 1e-8) -> ModuliVector:
    """Eigenvalue moduli of a matrix, sorted non-increasing.

    These are exactly the eigenvalues of the hyperbolic factor of g.
    """
    spectrum = eigen_spectrum(g, cluster_tol)
    return ModuliVector.from_values(spectrum.moduli())


def moduli_from_eigenvalues(values) -> ModuliVector:
    """Moduli of externally supplied eigenvalues; exact when possible.

    Rational eigenvalues with exactly rational moduli yield an exact
    vector; anything else falls back to floats.
    """
    exact: list[Fraction] = []
    for z in values:
        mod = exact_modulus(z)
        if mod is None:
            return ModuliVector.from_values([abs(complex(z)) for z in values])
        exact.append(mod)
    return ModuliVector.from_values(exact)


def _as_moduli(x) -> ModuliVector:
    if isinstance(x, ModuliVector):
        return x
    return ModuliVector.from_values(x)


def _as_partition(shape) -> Partition:
    if isinstance(shape, Partition):
        return shape
    return Partition(tuple(shape))
