"""Covariant, linear, permutation-invariant two-particle maps.

For a one-particle Bloch vector ``m`` the family is

    rho_out(m) = 1x1/N^2 + alpha m_ij (A_ij x 1 + 1 x A_ij) + C A_ij x A_ji
                 + beta m_il A_ij x A_jl + beta m_li A_ji x A_lj

Two-particle matrices use the ordering ``|ij> = |i> x |j>``, first factor
as the slow index, so a kron product is a plain ``np.kron``.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from ._validation import ValidationError, check_dimension, check_hermitian
from .bloch import _basis, canonical_bloch_vector

__all__ = [
    "CanonicalCoefficients",
    "MapParams",
    "Positivity",
    "RegionScan",
    "apply",
    "assemble_canonical_output",
    "canonical_coefficients",
    "canonical_spectrum",
    "physical_margin",
    "positivity_flags",
    "region_scan",
    "swap_operator",
    "triple_points",
    "verify_linearity",
]

PHYSICAL_TOL = 1e-12
ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class MapParams:
    """One member ``(alpha, beta, C)`` of the map family in dimension ``N``."""

    N: int
    alpha: float
    beta: float
    C: float

    def __post_init__(self):
        object.__setattr__(self, "N", check_dimension(self.N))
        for name in ("alpha", "beta", "C"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValidationError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_products(cls, N, alpha_m11, beta_m11, C):
        """Build from the canonical-input products ``alpha*m_11``, ``beta*m_11``."""
        N = check_dimension(N)
        return cls(N, alpha_m11 / N, beta_m11 / N, C)

    def to_dict(self):
        return {"N": self.N, "alpha": self.alpha, "beta": self.beta, "C": self.C}


@dataclass(frozen=True)
class CanonicalCoefficients:
    """Matrix elements of the output for the canonical input ``|1><1|``."""

    N: int
    M11: float
    M12: float
    M23: float
    cross: float
    C: float

    def total_trace(self):
        N = self.N
        return (self.M11 + 2 * (N - 1) * self.M12 + (N - 1) * (self.M23 + self.C)
                + (N - 1) * (N - 2) * self.M23)


@dataclass(frozen=True)
class Positivity:
    m23_ge_abs_c: bool
    m12_ge_abs_cross: bool
    m23_plus_c_nonneg: bool
    m11_nonneg: bool
    margin: float

    @property
    def physical(self):
        return self.margin >= -PHYSICAL_TOL


@lru_cache(maxsize=None)
def _scalar_term(N):
    G = _basis(N)
    S = np.einsum("ijab,jicd->acbd", G, G, optimize=True).reshape(N * N, N * N)
    S.flags.writeable = False
    return S


def swap_operator(N):
    """Operator exchanging the two tensor factors of C^N x C^N."""
    N = check_dimension(N)
    P = np.zeros((N, N, N, N))
    idx = np.arange(N)
    P[idx[:, None], idx[None, :], idx[None, :], idx[:, None]] = 1.0
    return P.reshape(N * N, N * N)


def apply(params, m):
    """Two-particle output state of the map ``params`` for Bloch vector ``m``."""
    m = check_hermitian(m, "m")
    N = params.N
    if m.shape != (N, N):
        raise ValidationError(f"Bloch vector is {m.shape[0]}-dimensional, map is {N}")
    G = _basis(N)
    eye = np.eye(N)
    out = np.eye(N * N, dtype=complex) / N**2
    if params.alpha:
        X = np.einsum("ij,ijab->ab", m, G)
        out += params.alpha * (np.kron(X, eye) + np.kron(eye, X))
    if params.C:
        out += params.C * _scalar_term(N)
    if params.beta:
        V = np.einsum("il,ijab,jlcd->acbd", m, G, G, optimize=True)
        W = np.einsum("li,jiab,ljcd->acbd", m, G, G, optimize=True)
        out += params.beta * (V + W).reshape(N * N, N * N)
    return out


def _coefficients(N, am, bm, C):
    """M11, M12, M23, cross from the products ``alpha m_11``, ``beta m_11``.

    Works elementwise on arrays.
    """
    M23 = 1 / N**2 - 2 * am / N - C / N + 2 * bm / N**2
    M12 = M23 + am - 2 * bm / N
    M11 = 1 / N**2 + 2 * am * (1 - 1 / N) + C * (1 - 1 / N) + 2 * bm * (1 - 1 / N) ** 2
    return M11, M12, M23, C + bm


def canonical_coefficients(params):
    """Evaluate M11, M12, M23 and ``C + beta m_11`` for ``m_11 = N``."""
    N = params.N
    M11, M12, M23, cross = _coefficients(N, params.alpha * N, params.beta * N, params.C)
    return CanonicalCoefficients(N, M11, M12, M23, cross, params.C)


def assemble_canonical_output(coeffs):
    """Write out the canonical-input output matrix term by term from ``coeffs``."""
    N = coeffs.N
    rho = np.zeros((N, N, N, N))

    def put(i, j, k, l, v):
        rho[i, j, k, l] += v

    put(0, 0, 0, 0, coeffs.M11)
    for j in range(1, N):
        put(j, j, j, j, coeffs.M23 + coeffs.C)
        put(0, j, 0, j, coeffs.M12)
        put(0, j, j, 0, coeffs.cross)
        put(j, 0, 0, j, coeffs.cross)
        put(j, 0, j, 0, coeffs.M12)
    for i in range(1, N):
        for j in range(i + 1, N):
            put(i, j, i, j, coeffs.M23)
            put(i, j, j, i, coeffs.C)
            put(j, i, i, j, coeffs.C)
            put(j, i, j, i, coeffs.M23)
    return rho.reshape(N * N, N * N)


def canonical_spectrum(coeffs):
    """Sorted eigenvalues implied by the block structure of the canonical output."""
    N = coeffs.N
    pairs = (N - 1) * (N - 2) // 2
    ev = ([coeffs.M11] + [coeffs.M23 + coeffs.C] * (N - 1)
          + [coeffs.M12 + coeffs.cross] * (N - 1) + [coeffs.M12 - coeffs.cross] * (N - 1)
          + [coeffs.M23 + coeffs.C] * pairs + [coeffs.M23 - coeffs.C] * pairs)
    return np.sort(np.array(ev))


def _slacks(N, M11, M12, M23, cross, C):
    # At N = 2 there are no |ij>, |ji> pairs with i, j >= 2, so M23 - |C|
    # is not an eigenvalue and only M23 + C constrains.
    m23 = M23 + C if N == 2 else M23 - np.abs(C)
    return (m23, M12 - np.abs(cross), M23 + C, M11)


def positivity_flags(coeffs, C=None):
    """Check the four non-negativity constraints on the canonical output.

    ``margin`` is the smallest slack; the point is physical iff
    ``margin >= -1e-12`` so boundary points count as physical.
    """
    C = coeffs.C if C is None else C
    s = _slacks(coeffs.N, coeffs.M11, coeffs.M12, coeffs.M23, coeffs.cross, C)
    ok = [v >= -PHYSICAL_TOL for v in s]
    return Positivity(*ok, margin=float(min(s)))


def physical_margin(N, am, bm, C):
    """Vectorized constraint margin over arrays of ``(alpha m_11, beta m_11, C)``."""
    return np.minimum.reduce(_slacks(N, *_coefficients(N, am, bm, C), C))


@dataclass
class RegionScan:
    """Grid scan of the ``(x, y) = (beta m_11, C)`` plane at fixed ``alpha``.

    Arrays have shape ``(len(xs), len(ys))`` with ``x`` as the slow index.
    ``margin`` comes from the closed-form constraints, ``min_eig`` from
    diagonalizing :func:`apply` on the canonical input.
    """

    N: int
    alpha: float
    xs: np.ndarray
    ys: np.ndarray
    margin: np.ndarray
    min_eig: np.ndarray

    @property
    def physical(self):
        return self.margin >= -PHYSICAL_TOL

    @property
    def physical_by_eig(self):
        return self.min_eig >= -PHYSICAL_TOL

    def disagreements(self, tol=ORACLE_TOL):
        """Grid points where the two physicality tests differ away from zero."""
        bad = (self.physical != self.physical_by_eig) & (np.abs(self.min_eig) > tol)
        return np.argwhere(bad)

    def rows(self):
        X, Y = np.meshgrid(self.xs, self.ys, indexing="ij")
        for x, y, p, e, mg in zip(X.ravel(), Y.ravel(), self.physical.ravel(),
                                  self.min_eig.ravel(), self.margin.ravel()):
            yield float(x), float(y), bool(p), float(e), float(mg)


def _check_range(r, name):
    lo, hi = (float(v) for v in r)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValidationError(f"{name} must be a finite interval lo <= hi, got {r}")
    return lo, hi


def _canonical_pieces(N, alpha):
    """Canonical-input outputs of :func:`apply` at ``(alpha, 0, 0)`` and the unit
    steps along ``beta m_11`` and ``C``.

    The output is affine in the parameters, so these three real matrices
    rebuild it anywhere in the plane.
    """
    m = canonical_bloch_vector(N)
    ident = np.eye(N * N) / N**2
    R0 = apply(MapParams(N, alpha, 0.0, 0.0), m).real
    Rx = apply(MapParams.from_products(N, 0.0, 1.0, 0.0), m).real - ident
    Ry = apply(MapParams(N, 0.0, 0.0, 1.0), m).real - ident
    return R0, Rx, Ry


def region_scan(N, alpha=0.0, x_range=(-0.3, 0.3), y_range=(-0.3, 0.3), resolution=201):
    """Decide physicality on a grid by constraints and by direct eigenvalues.

    The eigenvalue path builds the canonical output with :func:`apply`, using
    its linearity in ``(alpha, beta, C)``, and diagonalizes every grid point.
    """
    N = check_dimension(N)
    if resolution < 2:
        raise ValidationError("resolution must be >= 2")
    xlo, xhi = _check_range(x_range, "x_range")
    ylo, yhi = _check_range(y_range, "y_range")
    # a zero-width range collapses to a single grid line
    xs = np.linspace(xlo, xhi, resolution) if xhi > xlo else np.array([xlo])
    ys = np.linspace(ylo, yhi, resolution) if yhi > ylo else np.array([ylo])
    X, Y = np.meshgrid(xs, ys, indexing="ij")

    margin = np.broadcast_to(physical_margin(N, alpha * N, X, Y), X.shape).copy()

    R0, Rx, Ry = _canonical_pieces(N, alpha)
    min_eig = np.empty_like(X)
    for k in range(len(xs)):
        mats = R0 + X[k, :, None, None] * Rx + Y[k, :, None, None] * Ry
        min_eig[k] = np.linalg.eigvalsh(mats)[:, 0]
    return RegionScan(N, float(alpha), xs, ys, margin, min_eig)


def _eigen_lines(N, alpha):
    """Affine forms ``a + b x + c y`` of the five distinct eigenvalue families."""
    def forms(x, y):
        k = canonical_coefficients(MapParams.from_products(N, alpha * N, x, y))
        ev = [k.M11, k.M23 + k.C, k.M12 + k.cross, k.M12 - k.cross]
        if N > 2:
            ev.append(k.M23 - k.C)
        return np.array(ev)

    f0 = forms(0.0, 0.0)
    return np.column_stack([f0, forms(1.0, 0.0) - f0, forms(0.0, 1.0) - f0])


def triple_points(N, alpha=0.0, x_range=(-np.inf, np.inf), y_range=(-np.inf, np.inf),
                  tol=1e-12):
    """Physical points where at least three eigenvalue families vanish at once.

    Returns a list of ``(x, y, n_zero)`` sorted by ``(x, y)``.
    """
    N = check_dimension(N)
    L = np.unique(np.round(_eigen_lines(N, alpha), 14), axis=0)
    found = {}
    for a in range(len(L)):
        for b in range(a + 1, len(L)):
            A = L[[a, b], 1:]
            if abs(np.linalg.det(A)) < 1e-14:
                continue
            x, y = (0.0 if abs(v) < 1e-15 else float(v)
                    for v in np.linalg.solve(A, -L[[a, b], 0]))
            if not (x_range[0] - tol <= x <= x_range[1] + tol
                    and y_range[0] - tol <= y <= y_range[1] + tol):
                continue
            vals = L[:, 0] + L[:, 1] * x + L[:, 2] * y
            n_zero = int(np.sum(np.abs(vals) < 1e-10))
            coeffs = canonical_coefficients(MapParams.from_products(N, alpha * N, x, y))
            if n_zero >= 3 and positivity_flags(coeffs).physical:
                found[(round(x, 12), round(y, 12))] = (float(x), float(y), n_zero)
    return sorted(found.values())


def verify_linearity(params, m1, m2, p):
    """Max-norm deviation of ``apply`` from linearity on a convex mixture."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    m1 = np.asarray(m1, dtype=complex)
    m2 = np.asarray(m2, dtype=complex)
    mixed = apply(params, p * m1 + (1 - p) * m2)
    combo = p * apply(params, m1) + (1 - p) * apply(params, m2)
    return float(np.abs(mixed - combo).max())
