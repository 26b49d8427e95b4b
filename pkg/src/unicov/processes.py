"""The two distinguished universal processes: optimal cloning and optimal entanglement."""

import math

import numpy as np

from ._validation import check_dimension
from .covmap import MapParams

__all__ = [
    "BELL_KINDS",
    "antisymmetric_projector",
    "bell_state",
    "cloning_output",
    "cloning_params",
    "entangled_output",
    "entangling_params",
    "optimal_entropy",
]

BELL_KINDS = ("psi_minus", "psi_plus", "phi_plus", "phi_minus")


def _ket(i, j, N):
    v = np.zeros(N * N)
    v[i * N + j] = 1.0
    return v


def bell_state(kind, i, j, N):
    """Bell vector built from basis states ``|i>`` and ``|j>`` (1-based, i < j).

    psi_minus/psi_plus: (|ij> -/+ |ji>)/sqrt2, phi_plus/phi_minus: (|ii> +/- |jj>)/sqrt2.
    """
    N = check_dimension(N)
    if kind not in BELL_KINDS:
        raise ValueError(f"unknown Bell family {kind!r}; expected one of {BELL_KINDS}")
    if not (1 <= i < j <= N):
        raise IndexError(f"need 1 <= i < j <= {N}, got i={i}, j={j}")
    a, b = i - 1, j - 1
    if kind.startswith("psi"):
        u, v = _ket(a, b, N), _ket(b, a, N)
    else:
        u, v = _ket(a, a, N), _ket(b, b, N)
    sign = -1.0 if kind.endswith("minus") else 1.0
    return (u + sign * v) / math.sqrt(2)


def cloning_params(N):
    """Parameters of the optimal universal cloner, ``alpha``/``beta`` divided by ``m_11 = N``."""
    N = check_dimension(N)
    return MapParams.from_products(N, (N + 2) / (2 * N * (N + 1)), 1 / (2 * N + 2), 0.0)


def cloning_output(N):
    """Cloner output for input ``|1>``: ``P11 |11><11|`` plus a uniform mix of psi+_1j."""
    N = check_dimension(N)
    p11 = 2 / (N + 1)
    e11 = _ket(0, 0, N)
    rho = p11 * np.outer(e11, e11)
    for j in range(2, N + 1):
        v = bell_state("psi_plus", 1, j, N)
        rho += (1 - p11) / (N - 1) * np.outer(v, v)
    return rho.astype(complex)


def entangling_params(N):
    """``alpha = beta = 0``, ``C = -1/[N(N-1)]``."""
    N = check_dimension(N)
    return MapParams(N, 0.0, 0.0, -1.0 / (N * (N - 1)))


def antisymmetric_projector(N):
    """Projector onto the antisymmetric subspace, ``(1 - SWAP)/2``."""
    N = check_dimension(N)
    P = np.zeros((N * N, N * N))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            v = bell_state("psi_minus", i, j, N)
            P += np.outer(v, v)
    return P


def entangled_output(N):
    """Uniform mixture of all antisymmetric Bell states."""
    N = check_dimension(N)
    return (2.0 / (N * (N - 1)) * antisymmetric_projector(N)).astype(complex)


def optimal_entropy(N):
    """``ln C(N, 2)`` in nats."""
    N = check_dimension(N)
    return math.log(N * (N - 1) / 2)
