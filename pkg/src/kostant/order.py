"""The log-majorization partial order on SL_n data, with certificates.

For hyperbolic data described by positive moduli vectors x, y (products
normalized to 1), x dominates y exactly when log y lies in the convex
hull of the permutation orbit of log x; equivalently, when the sorted
prefix products of x dominate those of y. The order is decided
combinatorially here, and two kinds of machine-checkable evidence are
produced: T-transform chains certifying hull membership, and top-k
prefix functionals (or separating characters) certifying failure.

Comparison policy: exact inputs (Fractions) are compared exactly; float
comparisons use a relative slack and treat in-band differences as ties.
Strict separations required by the witness search re-run ambiguous
comparisons in exact rational arithmetic (binary floats are rationals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import (
    DimensionCap,
    LengthMismatch,
    NotSeparable,
    OrderHolds,
    PreconditionFailed,
    SumMismatch,
)
from .symchar import (
    Compose,
    Ext,
    ModuliVector,
    RepSpec,
    Sym,
    _as_moduli,
    _h_exact,
    _h_log,
    complete_homogeneous,
    rep_dim,
    rep_moduli,
)

REL_SLACK = 1e-10

GEQ = "GEQ"
LEQ = "LEQ"
EQUAL = "EQUAL"
INCOMPARABLE = "INCOMPARABLE"


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def _cmp(a, b, scale=None, slack: float = REL_SLACK) -> int:
    """Three-way compare: exact when both sides are rational, else
    float with a relative slack band treated as a tie."""
    if _is_exact(a) and _is_exact(b):
        return (a > b) - (a < b)
    fa, fb = float(a), float(b)
    if scale is None:
        scale = max(abs(fa), abs(fb), 1.0)
    if abs(fa - fb) <= slack * scale:
        return 0
    return 1 if fa > fb else -1


# --- domain types -------------------------------------------------------------


@dataclass(frozen=True)
class LogVector:
    """Additive avatar of hyperbolic data: reals sorted non-increasing."""

    values: tuple
    trace_zero: bool = False

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("log vector must be nonempty")
        for a, b in zip(self.values, self.values[1:]):
            if a < b:
                raise ValueError("log vector must be sorted non-increasing")
        if self.trace_zero:
            total = sum(self.values)
            scale = sum(abs(v) for v in self.values) or 1
            if _is_exact(total):
                if total != 0:
                    raise ValueError("trace_zero log vector must sum to 0")
            elif abs(float(total)) > 1e-9 * float(scale):
                raise ValueError("trace_zero log vector must sum to ~0")

    @classmethod
    def from_values(cls, values, trace_zero: bool = False) -> "LogVector":
        coerced = [Fraction(v) if isinstance(v, int) else v for v in values]
        coerced.sort(reverse=True)
        return cls(tuple(coerced), trace_zero)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for v in self.values)


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of kostant_compare.

    failing_level is the first prefix index at which the x >= y direction
    fails; present exactly when the relation is not GEQ/EQUAL.
    """

    relation: str
    failing_level: int | None = None


@dataclass(frozen=True)
class TTransformCertificate:
    """Hull-membership certificate: at most n-1 two-coordinate averagings.

    Each step (i, j, t) replaces coordinates i, j of the current vector v
    by t*v_i + (1-t)*v_j and (1-t)*v_i + t*v_j. Applying all steps to
    start.values yields end.values.
    """

    steps: tuple[tuple[int, int, object], ...]
    start: LogVector
    end: LogVector


@dataclass(frozen=True)
class SeparatingFunctional:
    """Hull-separation certificate: the top-k coordinate-sum functional.

    Its maximum over the permutation hull of x is the k-th prefix sum of
    sorted x; the value at y exceeds that by margin > 0.
    """

    k: int
    margin: object
    hull_max: object
    value_at_y: object


@dataclass(frozen=True)
class SeparatingWitness:
    """A representation whose absolute character strictly separates y over x.

    spec = Compose(Sym(m), Ext(k)) with k the first failing prefix level;
    chi_1 < chi_2 are the evaluated character values; paper_bound_m is the
    guaranteed sufficient symmetric-power degree (m <= paper_bound_m).
    """

    k: int
    m: int
    spec: RepSpec
    chi_1: object
    chi_2: object
    paper_bound_m: int
    dimension: int


@dataclass(frozen=True)
class TopKLevel:
    k: int
    sum_margin: float
    log_product_margin: float
    ok: bool


@dataclass(frozen=True)
class TopKReport:
    spec: RepSpec
    dimension: int
    levels: tuple[TopKLevel, ...]
    final_product_gap: float

    @property
    def all_ok(self) -> bool:
        return all(level.ok for level in self.levels)


# --- majorization predicates ----------------------------------------------------


def _sorted_values(x) -> tuple:
    if isinstance(x, LogVector):
        return x.values
    if isinstance(x, ModuliVector):
        return x.values
    return LogVector.from_values(x).values


def majorize_additive(x, y, *, weak: bool = False, slack: float = REL_SLACK) -> bool:
    """Prefix-sum dominance of sorted x over sorted y.

    Strict (default) form also requires equal totals; the weak form
    (prefix dominance only) is what multiplicative majorization of
    positive vectors implies for the raw values.
    """
    xs, ys = _sorted_values(x), _sorted_values(y)
    if len(xs) != len(ys):
        raise LengthMismatch(f"lengths {len(xs)} != {len(ys)}")
    scale = float(sum(abs(float(v)) for v in xs) +
                  sum(abs(float(v)) for v in ys)) or 1.0
    px = py = 0
    for k in range(len(xs)):
        px = px + xs[k]
        py = py + ys[k]
        if k < len(xs) - 1 or weak:
            if _cmp(px, py, scale, slack) < 0:
                return False
    if weak:
        return True
    return _cmp(px, py, scale, slack) == 0


def majorize_multiplicative(x, y, *, slack: float = REL_SLACK) -> bool:
    """Prefix-product dominance with equal total products.

    Implemented as additive majorization of the log vectors; exact inputs
    are decided exactly on prefix products instead.
    """
    xv, yv = _as_moduli(x), _as_moduli(y)
    if xv.n != yv.n:
        raise LengthMismatch(f"lengths {xv.n} != {yv.n}")
    if xv.exact and yv.exact:
        px, py = Fraction(1), Fraction(1)
        for k in range(xv.n):
            px *= xv.values[k]
            py *= yv.values[k]
            if k < xv.n - 1:
                if px < py:
                    return False
        return px == py
    lx = LogVector.from_values(xv.log_values())
    ly = LogVector.from_values(yv.log_values())
    return majorize_additive(lx, ly, slack=slack)


def kostant_compare(x, y, *, slack: float = REL_SLACK) -> OrderVerdict:
    """Decide the partial order between two moduli vectors.

    Vectors are normalized to product one internally (scale-invariant
    prefix comparison), so only the n-1 proper prefix levels matter.
    GEQ means log y lies in the convex hull of the permutation orbit of
    log x.
    """
    xv, yv = _as_moduli(x), _as_moduli(y)
    if xv.n != yv.n:
        raise LengthMismatch(f"lengths {xv.n} != {yv.n}")
    n = xv.n
    if n == 1:
        return OrderVerdict(EQUAL)
    comparisons = _normalized_prefix_comparisons(xv, yv, slack)
    geq = all(c >= 0 for c in comparisons)
    leq = all(c <= 0 for c in comparisons)
    if geq and leq:
        return OrderVerdict(EQUAL)
    if geq:
        return OrderVerdict(GEQ)
    failing = next(k + 1 for k, c in enumerate(comparisons) if c < 0)
    return OrderVerdict(LEQ if leq else INCOMPARABLE, failing_level=failing)


def _normalized_prefix_comparisons(xv: ModuliVector, yv: ModuliVector,
                                   slack: float) -> list[int]:
    """Three-way comparisons of normalized prefix products, k = 1..n-1.

    Comparing P_k(x) / (P_n(x))^(k/n) against the same for y is done in
    the scale-invariant integer-power form P_k(x)^n P_n(y)^k vs
    P_k(y)^n P_n(x)^k (exact mode) or on centered log prefixes (float).
    """
    n = xv.n
    if xv.exact and yv.exact:
        out = []
        px, py = Fraction(1), Fraction(1)
        total_x = xv.product()
        total_y = yv.product()
        for k in range(1, n):
            px *= xv.values[k - 1]
            py *= yv.values[k - 1]
            lhs = px ** n * total_y ** k
            rhs = py ** n * total_x ** k
            out.append((lhs > rhs) - (lhs < rhs))
        return out
    lx, ly = xv.log_values(), yv.log_values()
    mean_x = sum(lx) / n
    mean_y = sum(ly) / n
    scale = sum(abs(v - mean_x) for v in lx) + sum(abs(v - mean_y) for v in ly) or 1.0
    out = []
    sx = sy = 0.0
    for k in range(1, n):
        sx += lx[k - 1] - mean_x
        sy += ly[k - 1] - mean_y
        out.append(_cmp(sx, sy, scale, slack))
    return out


# --- permutohedron certificates ---------------------------------------------------


def permutohedron_certificate(x, y, *, slack: float = REL_SLACK):
    """Certify membership of sorted y in the permutation hull of x, or refute it.

    If sorted x majorizes sorted y (equal totals), returns a
    TTransformCertificate with at most n-1 steps transforming sorted x
    into sorted y. Otherwise returns a SeparatingFunctional at the first
    failing prefix level. Raises SumMismatch when the totals differ (the
    hull question is then vacuous).
    """
    lx = x if isinstance(x, LogVector) else LogVector.from_values(_sorted_values(x))
    ly = y if isinstance(y, LogVector) else LogVector.from_values(_sorted_values(y))
    if lx.n != ly.n:
        raise LengthMismatch(f"lengths {lx.n} != {ly.n}")
    scale = float(sum(abs(float(v)) for v in lx.values) +
                  sum(abs(float(v)) for v in ly.values)) or 1.0
    total_x = sum(lx.values)
    total_y = sum(ly.values)
    if _cmp(total_x, total_y, scale, slack) != 0:
        raise SumMismatch(f"totals differ: {total_x} vs {total_y}")

    # first failing prefix level, if any
    px = py = 0
    for k in range(1, lx.n):
        px = px + lx.values[k - 1]
        py = py + ly.values[k - 1]
        if _cmp(px, py, scale, slack) < 0:
            return SeparatingFunctional(
                k=k, margin=py - px, hull_max=px, value_at_y=py)

    steps = _hlp_steps(list(lx.values), list(ly.values), scale)
    return TTransformCertificate(steps=tuple(steps), start=lx, end=ly)


def _hlp_steps(work: list, target: list, scale: float) -> list[tuple[int, int, object]]:
    """Hardy-Littlewood-Polya chain from work to target (both sorted desc).

    Each round averages the outermost mismatched pair just enough to pin
    one more coordinate to its target, preserving sortedness and
    majorization; at most n-1 rounds are needed.
    """
    exact = all(_is_exact(v) for v in work + target)
    thr = 0 if exact else 1e-14 * (scale or 1.0)
    steps: list[tuple[int, int, object]] = []
    for _ in range(len(work)):
        diffs = [w - t for w, t in zip(work, target)]
        if exact:
            converged = all(d == 0 for d in diffs)
        else:
            converged = all(abs(float(d)) <= thr for d in diffs)
        if converged:
            return steps
        above = [i for i, d in enumerate(diffs) if d > thr]
        if above:
            j = max(above)
            below = [i for i, d in enumerate(diffs) if i > j and d < -thr]
        else:
            below = []
        if not above or not below:
            # only float dust remains on one side
            if not exact and max(abs(float(d)) for d in diffs) <= 10 * thr:
                return steps
            raise AssertionError(
                "T-transform chain stalled; inputs not majorized?")
        k = min(below)
        delta = min(diffs[j], -diffs[k])
        gap = work[j] - work[k]
        t = 1 - delta / gap
        steps.append((j, k, t))
        work[j] = work[j] - delta
        work[k] = work[k] + delta
    raise AssertionError("T-transform chain did not converge; inputs not majorized?")


def apply_t_transforms(start, steps) -> list:
    """Replay T-transform steps on a copy of the start vector."""
    v = list(start)
    for i, j, t in steps:
        vi, vj = v[i], v[j]
        v[i] = t * vi + (1 - t) * vj
        v[j] = (1 - t) * vi + t * vj
    return v


def verify_certificate(cert: TTransformCertificate) -> float:
    """Max absolute replay error |T(start) - end|; 0 for exact inputs."""
    replayed = apply_t_transforms(cert.start.values, cert.steps)
    return max(abs(float(a - b)) for a, b in zip(replayed, cert.end.values))


def verify_functional(func: SeparatingFunctional, x, y,
                      exhaustive: bool = False) -> bool:
    """Check that the top-k functional separates y from the hull of x.

    With exhaustive=True every distinct permutation of x is evaluated
    (n! vertices; intended for small n); otherwise the hull maximum is
    the k-th prefix sum of sorted x.
    """
    xs, ys = _sorted_values(x), _sorted_values(y)
    k = func.k
    value_at_y = sum(ys[:k])
    if exhaustive:
        hull_max = max(sum(sorted(p, reverse=True)[:k])
                       for p in set(permutations(xs)))
    else:
        hull_max = sum(xs[:k])
    margin = value_at_y - hull_max
    if _is_exact(margin):
        return margin > 0 and margin == func.margin
    return margin > 0 and math.isclose(float(margin), float(func.margin),
                                       rel_tol=1e-9, abs_tol=1e-12)


# --- separating representations ----------------------------------------------------


def separating_sym_power(c_vec, d_vec, *, slack: float = REL_SLACK,
                         m_limit: int | None = None,
                         verify_limit: int = 20_000) -> tuple[int, int]:
    """Symmetric-power degrees separating two positive diagonal spectra.

    Requires the spectral radius c of c_vec to strictly exceed d of
    d_vec. Returns (m_min, m_paper): m_min is the least m with
    h_m(c_vec) > h_m(d_vec); m_paper is the least m with
    (c/d)^m > (m+n)^n, which guarantees the separation through the chain
    c^m > (m+n)^n d^m > binom(m+n-1, n-1) d^m >= h_m(d_vec). Both are
    verified by evaluation (m_paper only up to verify_limit, beyond
    which the scan inequality itself is the certificate). m_limit bounds
    the m_min scan; NotSeparable is raised if no separation is found
    within it (thin radius gaps may genuinely need a huge degree).
    """
    cv, dv = _as_moduli(c_vec), _as_moduli(d_vec)
    if cv.n != dv.n:
        raise LengthMismatch(f"lengths {cv.n} != {dv.n}")
    n = cv.n
    c, d = cv.values[0], dv.values[0]
    if _cmp(c, d, slack=slack) <= 0:
        raise NotSeparable(f"spectral radii do not separate: c = {c}, d = {d}")

    m_paper = _least_paper_degree(c, d, n)
    scan_to = m_paper if m_limit is None else min(m_paper, m_limit)
    m_min = _least_separating_degree(cv, dv, scan_to, slack)
    if m_min is None:
        raise NotSeparable(
            f"no separating symmetric power up to degree {scan_to} "
            f"(guaranteed bound is {m_paper})")
    if m_paper <= verify_limit:
        assert _h_cmp(m_paper, cv, dv, slack) > 0
    return m_min, m_paper


def _paper_cond_float(m: int, log_ratio: float, n: int) -> float:
    return m * log_ratio - n * math.log(m + n)


def _paper_cond_exact(m: int, c: Fraction, d: Fraction, n: int) -> bool:
    return (c.numerator * d.denominator) ** m > \
        (m + n) ** n * (c.denominator * d.numerator) ** m


def _least_paper_degree(c, d, n: int) -> int:
    """Least m >= 1 with (c/d)^m > (m+n)^n.

    The log-gap m*log(c/d) - n*log(m+n) is convex and negative at 0, so
    the feasible set is a final segment; exponential + binary search finds
    the float boundary and exact integer comparisons settle the fence.
    """
    log_ratio = math.log(float(c)) - math.log(float(d))
    hi = 1
    while _paper_cond_float(hi, log_ratio, n) <= 0:
        hi *= 2
        if hi > 10 ** 15:
            raise NotSeparable("paper degree bound overflowed the search range")
    lo = hi // 2 if hi > 1 else 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _paper_cond_float(mid, log_ratio, n) > 0:
            hi = mid
        else:
            lo = mid
    m = hi
    # settle the boundary exactly (floats are rationals)
    cf, df = Fraction(c), Fraction(d)
    while m > 1 and _paper_cond_exact(m - 1, cf, df, n):
        m -= 1
    while not _paper_cond_exact(m, cf, df, n):
        m += 1
    return m


EXACT_TIE_DEGREE_LIMIT = 2000


def _h_cmp(m: int, cv: ModuliVector, dv: ModuliVector, slack: float) -> int:
    """Three-way compare of h_m(cv) vs h_m(dv), exact on float ties.

    Exact resolution is skipped above EXACT_TIE_DEGREE_LIMIT for float
    inputs (the rationals there are astronomically large); the in-band
    result is then reported as a tie.
    """
    hc = _h_log(m, cv.as_floats())
    hd = _h_log(m, dv.as_floats())
    scale = max(abs(hc), abs(hd), 1.0)
    if abs(hc - hd) > 100 * slack * scale:
        return 1 if hc > hd else -1
    if not (cv.exact and dv.exact) and m > EXACT_TIE_DEGREE_LIMIT:
        return 0
    exact_c = _h_exact(m, cv.as_fractions())
    exact_d = _h_exact(m, dv.as_fractions())
    return (exact_c > exact_d) - (exact_c < exact_d)


def _least_separating_degree(cv: ModuliVector, dv: ModuliVector,
                             m_stop: int, slack: float) -> int | None:
    """Least m <= m_stop with h_m(cv) > h_m(dv) beyond comparison noise.

    Incremental log-domain rows; in-band differences fall back to exact
    comparison (capped as in _h_cmp). Returns None when no degree up to
    m_stop separates.
    """
    n = cv.n
    logs_c = [math.log(v) for v in cv.as_floats()]
    logs_d = [math.log(v) for v in dv.as_floats()]
    exact_ok = cv.exact and dv.exact
    row_c = [0.0] * (n + 1)  # log h_m over prefixes, current degree
    row_d = [0.0] * (n + 1)
    for m in range(1, m_stop + 1):
        row_c = _log_row_step(row_c, logs_c)
        row_d = _log_row_step(row_d, logs_d)
        diff = row_c[n] - row_d[n]
        scale = max(abs(row_c[n]), abs(row_d[n]), 1.0)
        if diff > 100 * slack * scale:
            return m
        if abs(diff) <= 100 * slack * scale:
            if exact_ok or m <= EXACT_TIE_DEGREE_LIMIT:
                if _h_exact(m, cv.as_fractions()) > _h_exact(m, dv.as_fractions()):
                    return m
    return None


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def _log_row_step(prev: list[float], logs: list[float]) -> list[float]:
    cur = [-math.inf] * len(prev)
    for k in range(1, len(prev)):
        cur[k] = _logaddexp(cur[k - 1], logs[k - 1] + prev[k])
    return cur


def find_separating_character(x, y, *, slack: float = REL_SLACK,
                              dim_cap: int | None = 10 ** 6) -> SeparatingWitness:
    """Construct a representation separating y strictly over x.

    Requires that x does not dominate y. The witness composes the m-th
    symmetric power with the k-th exterior power, where k is a failing
    prefix level (so the exterior-power spectral radius of y already
    exceeds that of x) and m comes from the symmetric-power degree scan
    on the exterior moduli. The smallest failing level is preferred;
    levels whose separation degree would push the composed dimension over
    dim_cap are skipped in favour of later failing levels. Raises
    OrderHolds when x >= y, and DimensionCap when every failing level
    needs a degree beyond the cap (near-comparable pairs genuinely
    require enormous symmetric powers).
    """
    xv, yv = _normalize_sl(_as_moduli(x)), _normalize_sl(_as_moduli(y))
    verdict = kostant_compare(xv, yv, slack=slack)
    if verdict.relation in (GEQ, EQUAL):
        raise OrderHolds(f"x dominates y (relation {verdict.relation}); "
                         "no separating character exists")
    n = xv.n
    comparisons = _normalized_prefix_comparisons(xv, yv, slack)
    failing = [k for k, c in enumerate(comparisons, start=1) if c < 0]

    for k in failing:
        ext_dim = math.comb(n, k)
        m_budget = _degree_budget(ext_dim, dim_cap)
        if m_budget is not None and m_budget < 1:
            continue
        ext_x = rep_moduli(Ext(k), xv, cap=None)
        ext_y = rep_moduli(Ext(k), yv, cap=None)
        try:
            m_min, m_paper = separating_sym_power(
                ext_y, ext_x, slack=slack, m_limit=m_budget)
        except NotSeparable:
            continue
        spec = Compose(Sym(m_min), Ext(k))
        dimension = rep_dim(spec, n)
        chi_1 = complete_homogeneous(m_min, ext_x)
        chi_2 = complete_homogeneous(m_min, ext_y)
        if _h_cmp(m_min, ext_y, ext_x, slack) <= 0:
            raise AssertionError("witness failed its strict character comparison")
        return SeparatingWitness(k=k, m=m_min, spec=spec, chi_1=chi_1,
                                 chi_2=chi_2, paper_bound_m=m_paper,
                                 dimension=dimension)
    raise DimensionCap(
        f"every failing level needs a symmetric power beyond dimension cap "
        f"{dim_cap}; the pair is nearly comparable (raise dim_cap, or use "
        f"exact inputs and dim_cap=None)")


def _degree_budget(ext_dim: int, dim_cap: int | None,
                   hard_limit: int = 10 ** 6) -> int | None:
    """Largest symmetric degree m keeping comb(m + N - 1, N - 1) <= cap."""
    if dim_cap is None:
        return None
    if ext_dim == 1:
        return hard_limit  # 1-dimensional inner rep: all powers are scalars
    lo, hi = 0, hard_limit  # comb(N - 1, N - 1) = 1 <= cap always
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if math.comb(mid + ext_dim - 1, ext_dim - 1) <= dim_cap:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _normalize_sl(v: ModuliVector) -> ModuliVector:
    """Scale to product 1; exact vectors must already be normalized."""
    if v.exact:
        if v.product() == 1:
            return v
        raise ValueError("exact moduli must have product exactly 1; "
                         "normalize before calling")
    if abs(math.fsum(v.log_values())) <= 1e-9 * (sum(map(abs, v.log_values())) + 1):
        return v
    return v.normalized()


def check_topk(x, y, spec: RepSpec, *, cap: int | None = 10 ** 6,
               slack: float = REL_SLACK) -> TopKReport:
    """Verify top-k product and sum dominance of rep moduli of x over y.

    Precondition: x dominates y in the order (PreconditionFailed
    otherwise). Margins are reported for every level; product margins in
    log domain.
    """
    xv, yv = _as_moduli(x), _as_moduli(y)
    verdict = kostant_compare(xv, yv, slack=slack)
    if verdict.relation not in (GEQ, EQUAL):
        raise PreconditionFailed(
            f"x does not dominate y (relation {verdict.relation})")
    mx = rep_moduli(spec, xv, cap=cap).as_floats()
    my = rep_moduli(spec, yv, cap=cap).as_floats()
    logs_x = [math.log(v) for v in mx]
    logs_y = [math.log(v) for v in my]
    sum_scale = sum(mx) + sum(my)
    log_scale = sum(map(abs, logs_x)) + sum(map(abs, logs_y)) + 1.0
    levels = []
    sx = sy = lx = ly = 0.0
    for k in range(len(mx)):
        sx += mx[k]
        sy += my[k]
        lx += logs_x[k]
        ly += logs_y[k]
        ok = (sx - sy >= -slack * sum_scale) and (lx - ly >= -slack * log_scale)
        levels.append(TopKLevel(k=k + 1, sum_margin=sx - sy,
                                log_product_margin=lx - ly, ok=ok))
    return TopKReport(spec=spec, dimension=len(mx), levels=tuple(levels),
                      final_product_gap=abs(lx - ly))
