"""Spectral and information-theoretic diagnostics for two-particle states."""

from dataclasses import dataclass

import numpy as np

from ._validation import (
    NotAStateError,
    ValidationError,
    check_bipartite,
    check_density_matrix,
    check_dimension,
    check_hermitian,
)
from .bloch import _basis, bloch_rotation
from .covmap import PHYSICAL_TOL, _canonical_pieces, _coefficients, apply, physical_margin

__all__ = [
    "GridOptimum",
    "TwoPartyDecomposition",
    "entropy_minimizer",
    "epsilon_separation",
    "fidelity_maximizer",
    "partial_trace",
    "partial_transpose",
    "partial_transpose_min_eig",
    "trace_distance",
    "two_party_decompose",
    "verify_covariance",
    "von_neumann_entropy",
]

CLAMP_TOL = 1e-10
NEGATIVE_TOL = 1e-8


def _clamped_spectrum(rho):
    ev = np.linalg.eigvalsh(rho)
    if ev[0] < -NEGATIVE_TOL:
        raise NotAStateError(f"eigenvalue {ev[0]:.3e} is below -{NEGATIVE_TOL:g}")
    ev[(ev < 0) & (ev >= -CLAMP_TOL)] = 0.0
    return ev


def _entropy_from_eigs(ev):
    ev = np.where(ev > 0, ev, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(ev > 0, ev * np.log(ev), 0.0)
    return -terms.sum(axis=-1)


def von_neumann_entropy(rho):
    """``-Tr rho ln rho`` in nats, with ``0 ln 0 = 0``.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero; anything below
    ``-1e-8`` raises :class:`NotAStateError`.
    """
    rho = check_hermitian(rho, "rho")
    return float(max(_entropy_from_eigs(_clamped_spectrum(rho)), 0.0))


def trace_distance(rho, sigma):
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    return float(0.5 * np.abs(np.linalg.eigvalsh(diff)).sum())


def partial_trace(rho, which):
    """Trace out factor ``which`` (1 or 2) of an N^2-dimensional state."""
    rho, N = check_bipartite(rho)
    T = rho.reshape(N, N, N, N)
    if which == 1:
        return np.einsum("kakb->ab", T)
    if which == 2:
        return np.einsum("akbk->ab", T)
    raise ValidationError(f"which must be 1 or 2, got {which!r}")


def partial_transpose(rho):
    """Transpose the second tensor factor."""
    rho, N = check_bipartite(rho)
    return rho.reshape(N, N, N, N).transpose(0, 3, 2, 1).reshape(N * N, N * N)


def partial_transpose_min_eig(rho):
    """Smallest eigenvalue of the partial transpose; negative certifies entanglement."""
    return float(np.linalg.eigvalsh(partial_transpose(rho))[0])


@dataclass(frozen=True)
class TwoPartyDecomposition:
    """Generator expansion of a two-particle state.

    ``rho = 1x1/N^2 + alpha1_ij A_ij x 1 + alpha2_ij 1 x A_ij + K_ijrs A_ij x A_rs``

    The generators satisfy ``sum_i A_ii = 0``, so coefficients are only
    fixed modulo that relation.  The stored ones are the minimal-norm
    representatives: ``sum_i alpha_ii = 0``, ``sum_i K_iirs = 0`` and
    ``sum_r K_ijrr = 0``.
    """

    alpha1: np.ndarray
    alpha2: np.ndarray
    K: np.ndarray

    @property
    def N(self):
        return self.alpha1.shape[0]

    def reconstruct(self):
        N = self.N
        G = _basis(N)
        eye = np.eye(N)
        a1 = np.einsum("ij,ijab->ab", self.alpha1, G)
        a2 = np.einsum("ij,ijab->ab", self.alpha2, G)
        KK = np.einsum("ijrs,ijab,rscd->acbd", self.K, G, G, optimize=True)
        return (np.eye(N * N) / N**2 + np.kron(a1, eye) + np.kron(eye, a2)
                + KK.reshape(N * N, N * N))


def two_party_decompose(rho):
    """Expansion coefficients from trace inner products with the dual basis."""
    rho, N = check_bipartite(rho)
    check_density_matrix(rho)
    G = _basis(N)
    T = rho.reshape(N, N, N, N)
    # Tr[(A_ji x A_sr) rho]; the Gram matrix of the traceless basis is the
    # projector removing the identity component, which fixes the gauge.
    K = np.einsum("jiab,srcd,bdac->ijrs", G, G, T, optimize=True)
    alpha1 = np.einsum("jiab,ba->ij", G, partial_trace(rho, 2)) / N
    alpha2 = np.einsum("jiab,ba->ij", G, partial_trace(rho, 1)) / N
    return TwoPartyDecomposition(alpha1, alpha2, K)


def epsilon_separation(rho):
    """Smallest ``eps`` with ``rho = (1 - eps) 1/d + eps rho1`` and ``rho1`` a state.

    Equals ``1 - d lambda_min`` clipped to ``[0, 1]``.
    """
    rho = check_density_matrix(rho)
    d = rho.shape[0]
    lam = _clamped_spectrum(rho)[0]
    lam = max(lam, 0.0)
    return float(min(1.0, max(0.0, 1.0 - d * lam)))


def verify_covariance(params, m, U):
    """Trace distance between ``apply(R_U m)`` and ``(U x U) apply(m) (U x U)^dagger``."""
    R = bloch_rotation(U)
    UU = np.kron(U, U)
    lhs = apply(params, R(m))
    rhs = UU @ apply(params, m) @ UU.conj().T
    return trace_distance(lhs, rhs)


# --- grid-search oracles -------------------------------------------------


@dataclass(frozen=True)
class GridOptimum:
    """Result of a zooming grid search.

    ``point`` is the refined optimum, ``coarse_point`` the best node of the
    initial grid and ``cell`` that grid's spacing along each axis.
    """

    point: tuple
    value: float
    coarse_point: tuple
    coarse_value: float
    cell: tuple
    levels: int


def _zoom_search(evaluate, bounds, resolution, refine_resolution=41, span=4,
                 max_levels=60, tie_key=None, tie_tol=0.0):
    """Minimize ``evaluate`` over a box by repeated grid refinement.

    ``evaluate(axes)`` receives one 1-d coordinate array per axis and returns
    the objective on their outer grid, ``inf`` where infeasible.  Each level
    re-grids ``span`` cells around the incumbent.  Ties within ``tie_tol``
    are resolved by the smallest ``tie_key(point)``.
    """
    lo = np.array([b[0] for b in bounds], dtype=float)
    hi = np.array([b[1] for b in bounds], dtype=float)
    full_lo, full_hi = lo.copy(), hi.copy()
    res = resolution
    coarse = None
    best = None
    for level in range(max_levels):
        axes = [np.linspace(a, b, res) for a, b in zip(lo, hi)]
        vals = evaluate(axes)
        vmin = np.min(vals)
        if not np.isfinite(vmin):
            if level == 0:
                raise ValidationError("no feasible grid point in the search window")
            break
        cand = np.argwhere(vals <= vmin + tie_tol)
        pts = [tuple(float(ax[k]) for ax, k in zip(axes, idx)) for idx in cand]
        if tie_key is not None:
            order = min(range(len(pts)), key=lambda n: tie_key(pts[n]))
        else:
            order = 0
        point, value = pts[order], float(vals[tuple(cand[order])])
        step = (hi - lo) / (res - 1)
        if coarse is None:
            coarse = (point, value, tuple(float(s) for s in step))
        if best is not None and value > best[1]:
            break
        best = (point, value)
        if np.all(step < 1e-14 * np.maximum(1.0, np.abs(point))):
            break
        c = np.array(point)
        lo = np.maximum(c - span * step, full_lo)
        hi = np.minimum(c + span * step, full_hi)
        res = refine_resolution
    return GridOptimum(best[0], best[1], coarse[0], coarse[1], coarse[2], level + 1)


def entropy_minimizer(N, resolution=400, x_range=None, y_range=None, alpha=0.0):
    """Brute-force minimum of the output entropy on the ``alpha = 0`` slice.

    Feasibility and entropy both come from the eigenvalues of :func:`apply`
    on the canonical input, so nothing here uses the closed-form
    coefficients.  The window defaults to ``[-2/N, 2/N]`` on both axes.

    At N = 2 the canonical output depends on ``beta m_11 + C`` only and the
    minimum is a whole line; ties are broken towards ``beta = 0``, then by
    smallest ``(C, beta m_11)``.

    Returns a dict with keys ``N, beta_m11, C, entropy, resolution`` plus the
    coarse-grid result.
    """
    N = check_dimension(N)
    if resolution < 50:
        raise ValidationError("resolution must be >= 50")
    w = 2.0 / N
    x_range = (-w, w) if x_range is None else x_range
    y_range = (-w, w) if y_range is None else y_range
    R0, Rx, Ry = _canonical_pieces(N, alpha)

    def evaluate(axes):
        xs, ys = axes
        out = np.empty((len(xs), len(ys)))
        for k, x in enumerate(xs):
            mats = R0 + x * Rx + ys[:, None, None] * Ry
            ev = np.linalg.eigvalsh(mats)
            S = _entropy_from_eigs(ev)
            out[k] = np.where(ev[:, 0] >= -PHYSICAL_TOL, S, np.inf)
        return out

    opt = _zoom_search(evaluate, [x_range, y_range], resolution,
                       tie_key=lambda p: (round(abs(p[0]), 9), p[1], p[0]), tie_tol=1e-9)
    x, y = opt.point
    return {
        "N": N,
        "beta_m11": x,
        "C": y,
        "entropy": max(opt.value, 0.0),
        "resolution": resolution,
        "coarse_beta_m11": opt.coarse_point[0],
        "coarse_C": opt.coarse_point[1],
        "coarse_entropy": opt.coarse_value,
        "cell": opt.cell,
    }


def fidelity_maximizer(N, resolution=400, window=0.5):
    """Brute-force maximum of ``M11`` over the physical region.

    Searches ``(alpha m_11, beta m_11, C)`` in ``[-window, window]^3``; the
    initial grid is swept as ``resolution`` slices of ``resolution^2``
    points.  Returns a :class:`GridOptimum` with ``value = -M11``.
    """
    N = check_dimension(N)

    def evaluate(axes):
        A, B, Cs = axes
        out = np.empty((len(A), len(B), len(Cs)))
        Bg, Cg = np.meshgrid(B, Cs, indexing="ij")
        for k, a in enumerate(A):
            M11 = _coefficients(N, a, Bg, Cg)[0]
            margin = physical_margin(N, a, Bg, Cg)
            out[k] = np.where(margin >= -PHYSICAL_TOL, -M11, np.inf)
        return out

    return _zoom_search(evaluate, [(-window, window)] * 3, resolution, refine_resolution=21)
