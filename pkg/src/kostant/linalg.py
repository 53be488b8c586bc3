"""Dense complex matrix kernels.

Eigenvalue computation with modulus-relative clustering, spectral
(generalized-eigenspace) projectors built by Schur-form block decoupling,
and the handful of matrix helpers the decomposition layer needs. Matrices
are plain numpy arrays (complex128); exact-mode inputs use object arrays
of :class:`fractions.Fraction` or :class:`ComplexRational` entries.

No Jordan basis is ever formed: eigenvalues are clustered and each
cluster gets one projector onto its generalized eigenspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg as sla

from .errors import IllConditioned, NonConvergence, Singular

DEFAULT_CLUSTER_TOL = 1e-8
DEFAULT_NORM_CAP = 1e12
SINGULARITY_THRESHOLD = 1e-13


class ComplexRational:
    """Gaussian rational a + b*i with Fraction components.

    Supports the ring operations plus division, enough to run the
    terminating unipotent-log series exactly inside object arrays.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return ComplexRational(self.re, -self.im)

    def modulus_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"ComplexRational({self.re!r}, {self.im!r})"


def _coerce(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction)):
        return ComplexRational(value)
    return NotImplemented


def exact_modulus(z) -> Fraction | None:
    """Exact |z| for a rational scalar, or None when it is irrational.

    Works for Fraction, int, and ComplexRational whose |z|^2 happens to be
    a perfect rational square.
    """
    if isinstance(z, (int, Fraction)):
        return abs(Fraction(z))
    if isinstance(z, ComplexRational):
        m2 = z.modulus_squared()
        num, den = m2.numerator, m2.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None
    return None


# --- matrix plumbing --------------------------------------------------------


def as_matrix(a) -> np.ndarray:
    """Validate and coerce to a square complex matrix (or object array)."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.dtype == object:
        return arr
    return arr.astype(complex)


def identity_like(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.dtype == object:
        eye = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                       dtype=object)
        return eye
    return np.eye(n, dtype=complex)


def to_complex(a: np.ndarray) -> np.ndarray:
    """Convert an exact object matrix to complex128 (identity on floats)."""
    arr = as_matrix(a)
    if arr.dtype != object:
        return arr
    out = np.empty(arr.shape, dtype=complex)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            out[i, j] = complex(arr[i, j])
    return out


def mat_mul(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"non-conformable shapes {a.shape} x {b.shape}")
    return a @ b


def mat_norm(a, ord="fro") -> float:
    a = np.asarray(a)
    if a.dtype == object:
        return math.sqrt(sum(abs(x) ** 2 for x in a.ravel()))
    return float(np.linalg.norm(a, ord))


def mat_det(a) -> complex:
    return complex(np.linalg.det(to_complex(a)))


def mat_inv(a, threshold: float = SINGULARITY_THRESHOLD) -> np.ndarray:
    """Inverse of a square complex matrix.

    Raises Singular when the smallest singular value is below
    threshold * largest (the matrix is numerically non-invertible).
    """
    m = to_complex(a)
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] == 0 or sv[-1] <= threshold * sv[0]:
        raise Singular(f"matrix is singular at threshold {threshold:g}")
    return np.linalg.inv(m)


def mat_exp(a, rtol: float = 1e-15) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring of the power series.

    exp(A) = (exp(A / 2^s))^(2^s) with s chosen so the scaled norm is at
    most 1/2; the Taylor series of the scaled block is summed until the
    term norm drops below rtol * (partial sum norm). Truncating after K
    terms leaves a remainder bounded by e * ||B||^(K+1) / (K+1)! with
    ||B|| <= 1/2, so a handful of terms reach double precision.
    """
    m = to_complex(a)
    n = m.shape[0]
    norm = mat_norm(m)
    s = 0
    if norm > 0.5:
        s = max(0, int(math.ceil(math.log2(norm / 0.5))))
    b = m / (2.0 ** s)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 64):
        term = term @ b / k
        result = result + term
        if mat_norm(term) <= rtol * mat_norm(result):
            break
    else:
        raise NonConvergence("matrix exponential series did not converge")
    for _ in range(s):
        result = result @ result
    return result


# --- spectra and projectors --------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Clustered eigenvalues of a square matrix.

    clusters: tuple of (value, algebraic multiplicity), sorted by
    non-increasing modulus; cluster values are multiplicity-weighted
    means of the merged eigenvalues.
    """

    clusters: tuple[tuple[complex, int], ...]
    cluster_tol: float

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.clusters)

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(v for v, _ in self.clusters)

    @property
    def radius(self) -> float:
        return max(abs(v) for v, _ in self.clusters)

    def moduli(self) -> list[float]:
        """Eigenvalue moduli with multiplicity, sorted non-increasing."""
        out: list[float] = []
        for v, m in self.clusters:
            out.extend([abs(v)] * m)
        out.sort(reverse=True)
        return out


@dataclass(frozen=True)
class SpectralDecomposition:
    spectrum: Spectrum
    projectors: tuple[np.ndarray, ...]
    residual: float


def eigen_spectrum(a, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    """All eigenvalues of a, with near-coincident values merged.

    Eigenvalues whose distance is at most cluster_tol relative to the
    spectral radius are merged into one cluster; the cluster value is the
    mean of its members. Merging repeats until all cluster values are
    separated by more than the threshold.
    """
    if cluster_tol < 0:
        raise ValueError("cluster_tol must be nonnegative")
    m = to_complex(a)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:  # QR iteration budget exhausted
        raise NonConvergence(str(exc)) from exc
    scale = float(np.max(np.abs(vals)))
    thr = cluster_tol * (scale if scale > 0 else 1.0)

    # single-linkage merge, then re-merge until means separate by > thr
    groups: list[list[complex]] = [[complex(v)] for v in vals]
    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                mi = sum(groups[i]) / len(groups[i])
                mj = sum(groups[j]) / len(groups[j])
                if abs(mi - mj) <= thr:
                    groups[i].extend(groups[j])
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
    clusters = sorted(
        ((sum(g) / len(g), len(g)) for g in groups),
        key=lambda c: (-abs(c[0]), -c[0].real, -c[0].imag),
    )
    return Spectrum(clusters=tuple(clusters), cluster_tol=cluster_tol)


def spectral_projectors(
    a,
    spectrum: Spectrum | None = None,
    *,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    norm_cap: float = DEFAULT_NORM_CAP,
) -> SpectralDecomposition:
    """Spectral projectors onto the generalized eigenspaces of a.

    For each cluster the complex Schur form is reordered so the cluster's
    eigenvalues lead, the Sylvester equation T11 X - X T22 = T12 is
    solved, and the projector is Z [[I, X], [0, 0]] Z*. Raises
    IllConditioned when any projector norm exceeds norm_cap (clusters too
    close for the requested tolerance).
    """
    m = to_complex(a)
    n = m.shape[0]
    if spectrum is None:
        spectrum = eigen_spectrum(m, cluster_tol)
    if spectrum.dim != n:
        raise ValueError("spectrum does not match matrix dimension")
    values = spectrum.values

    if len(values) == 1:
        projs: tuple[np.ndarray, ...] = (np.eye(n, dtype=complex),)
        residual = _projector_residual(m, projs)
        return SpectralDecomposition(spectrum, projs, residual)

    def nearest(z: complex) -> int:
        return min(range(len(values)), key=lambda i: abs(z - values[i]))

    projectors = []
    for idx, (_, mult) in enumerate(spectrum.clusters):
        t, z, sdim = sla.schur(m, output="complex",
                               sort=lambda w, idx=idx: nearest(w) == idx)
        if sdim != mult:
            raise IllConditioned(
                f"cluster {idx}: Schur reordering selected {sdim} eigenvalues, "
                f"expected {mult}; clusters too close for tolerance "
                f"{spectrum.cluster_tol:g}")
        if sdim == n:
            projectors.append(np.eye(n, dtype=complex))
            continue
        t11 = t[:sdim, :sdim]
        t12 = t[:sdim, sdim:]
        t22 = t[sdim:, sdim:]
        x = sla.solve_sylvester(t11, -t22, t12)
        p_schur = np.zeros((n, n), dtype=complex)
        p_schur[:sdim, :sdim] = np.eye(sdim)
        p_schur[:sdim, sdim:] = x
        projectors.append(z @ p_schur @ z.conj().T)

    worst = max(mat_norm(p) for p in projectors)
    if worst > norm_cap:
        raise IllConditioned(
            f"projector norm {worst:.3e} exceeds cap {norm_cap:.3e}")
    projs = tuple(projectors)
    residual = _projector_residual(m, projs)
    return SpectralDecomposition(spectrum, projs, residual)


def _projector_residual(m: np.ndarray, projectors) -> float:
    """Worst violation of completeness, idempotency, disjointness, commutation."""
    n = m.shape[0]
    total = sum(projectors)
    worst = mat_norm(total - np.eye(n))
    for i, p in enumerate(projectors):
        worst = max(worst, mat_norm(p @ p - p))
        worst = max(worst, mat_norm(m @ p - p @ m))
        for j, q in enumerate(projectors):
            if i < j:
                worst = max(worst, mat_norm(p @ q))
    return float(worst)
