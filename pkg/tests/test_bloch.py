import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from unicov import (
    DimensionError,
    ValidationError,
    bloch_compose,
    bloch_decompose,
    bloch_rotation,
    canonical_bloch_vector,
    generator,
    generator_basis,
    haar_unitary,
    purity_residual,
    random_density_matrix,
)

from conftest import pure_state

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_generator_n2_is_half_sigma_z():
    np.testing.assert_array_equal(generator(1, 1, 2), SZ / 2)
    np.testing.assert_array_equal(generator(2, 2, 2), -SZ / 2)


def test_generator_n2_raising():
    expected = np.zeros((2, 2))
    expected[0, 1] = 1
    np.testing.assert_array_equal(generator(1, 2, 2), expected)
    np.testing.assert_allclose(2 * generator(1, 2, 2), SX + 1j * SY, atol=0)
    np.testing.assert_allclose(2 * generator(2, 1, 2), SX - 1j * SY, atol=0)


@pytest.mark.parametrize("N", [2, 3, 4, 7])
def test_generator_algebra(N):
    G = generator_basis(N)
    for i in range(N):
        for j in range(N):
            assert abs(np.trace(G[i, j])) < 1e-12
            np.testing.assert_array_equal(G[i, j].conj().T, G[j, i])
            # entrywise definition
            for k in range(N):
                for l in range(N):
                    ref = (k == i) * (j == l) - (i == j) * (k == l) / N
                    assert G[i, j, k, l] == ref
            np.testing.assert_array_equal(G[i, j], generator(i + 1, j + 1, N))


def test_generator_errors():
    with pytest.raises(IndexError):
        generator(0, 1, 3)
    with pytest.raises(IndexError):
        generator(1, 4, 3)
    with pytest.raises(DimensionError):
        generator(1, 1, 1)


def test_generator_basis_is_read_only():
    with pytest.raises(ValueError):
        generator_basis(3)[0, 0, 0, 0] = 5


@pytest.mark.parametrize("N", [2, 3, 5])
def test_decompose_maximally_mixed(N):
    # gauge sum_i m_ii = N: the identity coefficient is 1, the traceless part vanishes
    m = bloch_decompose(np.eye(N) / N)
    np.testing.assert_allclose(m, np.eye(N), atol=1e-14)
    np.testing.assert_allclose(np.einsum("ij,ijkl->kl", m, generator_basis(N)), 0, atol=1e-14)


@pytest.mark.parametrize("N", [2, 3, 5])
def test_decompose_canonical_state(N):
    rho = np.zeros((N, N))
    rho[0, 0] = 1
    m = bloch_decompose(rho)
    np.testing.assert_allclose(m, canonical_bloch_vector(N), atol=1e-14)


def test_compose_examples():
    np.testing.assert_allclose(bloch_compose(np.zeros((3, 3))), np.eye(3) / 3)
    m = np.zeros((2, 2))
    m[0, 0] = 2
    np.testing.assert_allclose(bloch_compose(m), np.diag([1.0, 0.0]), atol=1e-15)


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_round_trip(N, rng):
    for _ in range(20):
        rho = random_density_matrix(N, rng)
        m = bloch_decompose(rho)
        np.testing.assert_allclose(m, m.conj().T, atol=1e-14)
        assert np.abs(bloch_compose(m) - rho).max() < 1e-12


def test_decompose_rejects_bad_input():
    with pytest.raises(ValidationError):
        bloch_decompose(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        bloch_decompose(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(ValidationError):
        bloch_compose(np.array([[1.0, 1j], [1j, 1.0]]))


def test_compose_does_not_enforce_positivity():
    m = np.zeros((3, 3))
    m[0, 0] = 10.0
    rho = bloch_compose(m)
    assert np.linalg.eigvalsh(rho)[0] < 0
    assert abs(np.trace(rho) - 1) < 1e-12


def test_purity_residual_examples():
    for N in (2, 3, 5):
        assert purity_residual(np.zeros((N, N))) == pytest.approx(-N**2 * (1 - 1 / N))
    m = np.zeros((2, 2))
    m[0, 0] = 2
    assert abs(purity_residual(m)) < 1e-12


@pytest.mark.parametrize("N", [2, 3, 5])
def test_purity_residual_iff_pure(N, rng):
    # the residual equals N^2 (Tr rho^2 - 1)
    for _ in range(100):
        rho = pure_state(N, rng)
        assert abs(purity_residual(bloch_decompose(rho))) < 1e-10
    for _ in range(100):
        rho = random_density_matrix(N, rng)
        purity = np.trace(rho @ rho).real
        assert purity < 1 - 1e-6
        res = purity_residual(bloch_decompose(rho))
        assert res == pytest.approx(N**2 * (purity - 1), abs=1e-10)
        assert res < -1e-6


def test_haar_deterministic_and_unitary():
    U1, U2 = haar_unitary(4, 11), haar_unitary(4, 11)
    np.testing.assert_array_equal(U1, U2)
    for seed in range(20):
        U = haar_unitary(5, seed)
        assert np.abs(U.conj().T @ U - np.eye(5)).max() < 1e-12


@pytest.mark.parametrize("N", [2, 3, 5])
def test_haar_first_moment(N):
    # E|U_11|^2 = 1/N, Var = (N-1)/(N^2 (N+1)) for the Haar measure
    rng = np.random.default_rng(N)
    samples = np.array([abs(haar_unitary(N, rng)[0, 0]) ** 2 for _ in range(10_000)])
    se = samples.std(ddof=1) / np.sqrt(len(samples))
    assert abs(samples.mean() - 1 / N) < 3 * se
    assert samples.var() == pytest.approx((N - 1) / (N**2 * (N + 1)), rel=0.1)


def test_haar_phase_moment():
    # Haar measure is invariant under left multiplication by diag phases: E[U_11] = 0
    rng = np.random.default_rng(3)
    vals = np.array([haar_unitary(3, rng)[0, 0] for _ in range(10_000)])
    assert abs(vals.mean()) < 4 * np.sqrt(1 / 3 / len(vals))


def test_rotation_identity():
    R = bloch_rotation(np.eye(3))
    np.testing.assert_allclose(R.matrix, np.eye(9), atol=0)


def test_rotation_diag_sign_flip():
    R = bloch_rotation(np.diag([1.0, -1.0]))
    m = np.array([[1.3, 0.4 - 0.2j], [0.4 + 0.2j, 0.7]])
    out = R(m)
    assert out[0, 1] == pytest.approx(-m[0, 1])
    assert out[0, 0] == pytest.approx(m[0, 0])


@pytest.mark.parametrize("N", [2, 3, 4])
def test_rotation_matches_conjugation(N, rng):
    for _ in range(20):
        U = haar_unitary(N, rng)
        rho = random_density_matrix(N, rng)
        lhs = bloch_decompose(U @ rho @ U.conj().T)
        rhs = bloch_rotation(U)(bloch_decompose(rho))
        assert np.abs(lhs - rhs).max() < 1e-10


def test_rotation_ignores_global_phase(rng):
    U = haar_unitary(3, rng)
    np.testing.assert_allclose(bloch_rotation(U).R, bloch_rotation(np.exp(0.7j) * U).R,
                               atol=1e-14)


def test_rotation_rejects_non_unitary():
    with pytest.raises(ValidationError):
        bloch_rotation(np.array([[1.0, 0.1], [0.0, 1.0]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_rotation_homomorphism(N, s1, s2):
    U1, U2 = haar_unitary(N, s1), haar_unitary(N, s2)
    composed = bloch_rotation(U2) @ bloch_rotation(U1)
    assert np.abs(bloch_rotation(U2 @ U1).matrix - composed.matrix).max() < 1e-10
