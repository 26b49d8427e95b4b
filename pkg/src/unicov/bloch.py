"""SU(N) generators and the generalized Bloch-vector encoding of qudit states.

The generators are

    (A_ij)_kl = delta_ki delta_jl - delta_ij delta_kl / N

and a one-particle density operator is written as

    rho = (1 + m_ij A_ij) / N

with summation over repeated indices.  Public indices ``i, j`` are 1-based;
arrays are stored 0-based.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import (
    ValidationError,
    check_density_matrix,
    check_dimension,
    check_hermitian,
    check_unitary,
)

__all__ = [
    "BlochRotation",
    "bloch_compose",
    "bloch_decompose",
    "bloch_rotation",
    "canonical_bloch_vector",
    "generator",
    "generator_basis",
    "haar_unitary",
    "purity_residual",
    "random_density_matrix",
    "random_pure_bloch_vector",
]


def generator(i, j, N):
    """Return the generator A_ij (1-based ``i``, ``j``) as an N x N matrix.

    >>> generator(1, 1, 2).real
    array([[ 0.5,  0. ],
           [ 0. , -0.5]])
    """
    N = check_dimension(N)
    for idx in (i, j):
        if not 1 <= idx <= N:
            raise IndexError(f"generator index {idx} outside 1..{N}")
    A = np.zeros((N, N), dtype=complex)
    A[i - 1, j - 1] = 1.0
    if i == j:
        A[np.diag_indices(N)] -= 1.0 / N
    return A


@lru_cache(maxsize=None)
def _basis(N):
    G = np.zeros((N, N, N, N), dtype=complex)
    idx = np.arange(N)
    G[idx[:, None], idx[None, :], idx[:, None], idx[None, :]] = 1.0
    for i in range(N):
        G[i, i, idx, idx] -= 1.0 / N
    G.flags.writeable = False
    return G


def generator_basis(N):
    """All generators stacked as a read-only array ``G[i, j] == A_(i+1)(j+1)``."""
    return _basis(check_dimension(N))


def bloch_compose(m):
    """Density operator ``(1 + m_ij A_ij) / N`` for a Hermitian coefficient array.

    Positivity is not enforced; use :func:`unicov.is_state` to test it.
    """
    m = check_hermitian(m, "m")
    N = check_dimension(m.shape[0])
    G = _basis(N)
    return (np.eye(N) + np.einsum("ij,ijkl->kl", m, G)) / N


def bloch_decompose(rho):
    """Bloch coefficients of a unit-trace Hermitian matrix.

    The generators span only traceless matrices, so ``m`` is fixed up to a
    multiple of the identity.  The gauge used here is ``sum_i m_ii = N``,
    which gives ``m_ij = N delta_i1 delta_j1`` for ``|1><1|`` and makes the
    purity relation hold for every pure state.
    """
    rho = check_density_matrix(rho)
    N = rho.shape[0]
    G = _basis(N)
    # Tr(A_ij^dagger rho) = Tr(A_ji rho) = rho_ij - delta_ij / N
    overlaps = np.einsum("jikl,lk->ij", G, rho)
    return N * overlaps + np.eye(N)


def purity_residual(m):
    """``m_ij m_ji - (m_ii)^2 / N - N^2 (1 - 1/N)``; zero for pure states."""
    m = check_hermitian(m, "m")
    N = m.shape[0]
    quad = np.einsum("ij,ji->", m, m).real
    tr = np.trace(m).real
    return float(quad - tr**2 / N - N**2 * (1.0 - 1.0 / N))


def haar_unitary(N, seed=None):
    """Haar-random element of U(N) from the QR factorization of a Ginibre matrix."""
    N = check_dimension(N)
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_density_matrix(N, seed=None, rank=None):
    """Random state ``X X^dagger / Tr`` with ``X`` an N x rank Ginibre matrix."""
    N = check_dimension(N)
    rng = np.random.default_rng(seed)
    rank = N if rank is None else rank
    X = rng.standard_normal((N, rank)) + 1j * rng.standard_normal((N, rank))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def canonical_bloch_vector(N):
    """Bloch vector of ``|1><1|``: ``m_ij = N delta_i1 delta_j1``."""
    N = check_dimension(N)
    m = np.zeros((N, N), dtype=complex)
    m[0, 0] = N
    return m


def random_pure_bloch_vector(N, seed=None):
    """Bloch vector of a Haar-random pure state."""
    psi = haar_unitary(N, seed)[:, 0]
    return N * np.outer(psi, psi.conj())


@dataclass(frozen=True)
class BlochRotation:
    """Linear action ``m'_ij = R_ijkl m_kl`` induced by ``rho -> U rho U^dagger``."""

    R: np.ndarray

    @property
    def N(self):
        return self.R.shape[0]

    @property
    def matrix(self):
        """``R`` as an N^2 x N^2 matrix acting on row-major flattened ``m``."""
        return self.R.reshape(self.N**2, self.N**2)

    def __call__(self, m):
        m = np.asarray(m, dtype=complex)
        if m.shape != (self.N, self.N):
            raise ValidationError(f"expected a {self.N}x{self.N} Bloch vector")
        return np.einsum("ijkl,kl->ij", self.R, m)

    def __matmul__(self, other):
        """Composition ``self o other`` (apply ``other`` first)."""
        if not isinstance(other, BlochRotation):
            return NotImplemented
        return BlochRotation((self.matrix @ other.matrix).reshape(self.R.shape))


def bloch_rotation(U):
    """Return the Bloch rotation of the unitary ``U``.

    Since ``sum_ij m_ij A_ij = m - Tr(m) 1/N`` with ``m`` read as a matrix,
    conjugation acts as ``m -> U m U^dagger``, i.e.
    ``R_ijkl = U_ik conj(U_jl)``.  A global phase of ``U`` drops out.
    """
    U = check_unitary(U)
    check_dimension(U.shape[0])
    return BlochRotation(np.einsum("ik,jl->ijkl", U, U.conj()))
