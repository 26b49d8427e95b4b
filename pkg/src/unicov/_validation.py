"""Input checks shared by the numerical modules."""

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
UNITARY_TOL = 1e-8


class ValidationError(ValueError):
    """Raised when an array does not have the structure an operation needs."""


class DimensionError(ValueError):
    """Raised for unsupported Hilbert-space dimensions (N < 2)."""


class NotAStateError(ValueError):
    """Raised when a matrix is too far from positive semidefinite."""


def check_dimension(N):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        raise DimensionError(f"dimension must be an integer, got {N!r}")
    if N < 2:
        raise DimensionError(f"dimension must be >= 2, got {N}")
    return int(N)


def check_square(a, name="matrix"):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square 2-d, got shape {a.shape}")
    return a


def check_hermitian(a, name="matrix", tol=HERMITIAN_TOL):
    a = check_square(a, name)
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.conj().T).max(initial=0.0) > tol * scale:
        raise ValidationError(f"{name} is not Hermitian")
    return a


def check_density_matrix(rho, name="rho", psd_tol=None):
    """Validate a density matrix; ``psd_tol=None`` skips the eigenvalue check."""
    rho = check_hermitian(rho, name)
    if rho.shape[0] < 2:
        raise DimensionError(f"{name} must have dimension >= 2")
    if abs(np.trace(rho) - 1.0) > 1e-10:
        raise ValidationError(f"{name} does not have unit trace")
    if psd_tol is not None and np.linalg.eigvalsh(rho)[0] < -psd_tol:
        raise NotAStateError(f"{name} has a negative eigenvalue")
    return rho


def check_bipartite(rho, name="rho"):
    """Return (rho, N) for a square matrix of dimension N**2."""
    rho = check_square(rho, name)
    d = rho.shape[0]
    N = int(round(np.sqrt(d)))
    if N * N != d or N < 2:
        raise ValidationError(f"{name} dimension {d} is not a square N**2 with N >= 2")
    return rho, N


def check_unitary(U, tol=UNITARY_TOL):
    U = check_square(U, "U")
    if np.abs(U.conj().T @ U - np.eye(U.shape[0])).max() > tol:
        raise ValidationError("U is not unitary")
    return U


def is_state(rho, tol=PSD_TOL):
    """True when ``rho`` is Hermitian, unit trace and PSD within ``tol``."""
    rho = np.asarray(rho, dtype=complex)
    if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
        return False
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        return False
    return bool(np.linalg.eigvalsh(rho)[0] >= -tol)
