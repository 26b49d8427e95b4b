"""Seeded property suites behind ``unicov verify``."""

from dataclasses import dataclass, field

import numpy as np

from .analysis import partial_trace, trace_distance, verify_covariance
from .bloch import (
    bloch_compose,
    bloch_decompose,
    canonical_bloch_vector,
    generator,
    haar_unitary,
    random_density_matrix,
    random_pure_bloch_vector,
)
from .covmap import (
    MapParams,
    apply,
    canonical_coefficients,
    canonical_spectrum,
    swap_operator,
    verify_linearity,
)
from .processes import entangled_output, entangling_params


@dataclass
class SuiteResult:
    name: str
    tolerance: float
    deviations: list = field(default_factory=list)

    @property
    def max_deviation(self):
        return max(self.deviations, default=0.0)

    @property
    def passed(self):
        return bool(self.deviations) and self.max_deviation < self.tolerance


def _random_params(N, rng):
    return MapParams(N, *(rng.standard_normal(3) / N))


def covariance(n, trials, seed):
    rng = np.random.default_rng(seed)
    res = SuiteResult("covariance", 1e-10)
    for _ in range(trials):
        params = _random_params(n, rng)
        m = random_pure_bloch_vector(n, rng)
        U = haar_unitary(n, rng)
        res.deviations.append(verify_covariance(params, m, U))
    return res


def linearity(n, trials, seed):
    rng = np.random.default_rng(seed)
    res = SuiteResult("linearity", 1e-12)
    for _ in range(trials):
        params = _random_params(n, rng)
        m1 = bloch_decompose(random_density_matrix(n, rng))
        m2 = bloch_decompose(random_density_matrix(n, rng))
        res.deviations.append(verify_linearity(params, m1, m2, rng.uniform()))
    return res


def permutation(n, trials, seed):
    rng = np.random.default_rng(seed)
    S = swap_operator(n)
    res = SuiteResult("permutation", 1e-12)
    for _ in range(trials):
        params = _random_params(n, rng)
        m = bloch_decompose(random_density_matrix(n, rng))
        out = apply(params, m)
        res.deviations.append(float(np.abs(S @ out @ S - out).max()))
    return res


def marginals(n, trials, seed):
    """Both marginals of the entangler output equal 1/N, for random pure inputs."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("marginals", 1e-12)
    target = np.eye(n) / n
    states = [entangled_output(n)]
    states += [apply(entangling_params(n), random_pure_bloch_vector(n, rng))
               for _ in range(trials)]
    for rho in states:
        dev = max(np.abs(partial_trace(rho, k) - target).max() for k in (1, 2))
        res.deviations.append(float(dev))
    return res


def spectrum(n, trials, seed):
    rng = np.random.default_rng(seed)
    res = SuiteResult("spectrum", 1e-10)
    m = canonical_bloch_vector(n)
    for _ in range(trials):
        params = _random_params(n, rng)
        ev = np.linalg.eigvalsh(apply(params, m))
        expected = canonical_spectrum(canonical_coefficients(params))
        res.deviations.append(float(np.abs(ev - expected).max()))
    return res


def algebra(n, trials, seed):
    """Generator identities: traceless, A_ij^dagger = A_ji, explicit entries."""
    res = SuiteResult("algebra", 1e-12)
    for N in range(2, n + 1):
        dev = 0.0
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                A = generator(i, j, N)
                ref = np.zeros((N, N))
                ref[i - 1, j - 1] = 1.0
                if i == j:
                    ref -= np.eye(N) / N
                dev = max(dev, abs(np.trace(A)),
                          np.abs(A.conj().T - generator(j, i, N)).max(),
                          np.abs(A - ref).max())
        res.deviations.append(float(dev))
    return res


def roundtrip(n, trials, seed):
    rng = np.random.default_rng(seed)
    res = SuiteResult("roundtrip", 1e-12)
    for _ in range(trials):
        rho = random_density_matrix(n, rng)
        res.deviations.append(float(np.abs(bloch_compose(bloch_decompose(rho)) - rho).max()))
    return res


def invariance(n, trials, seed):
    """Entangler output is unchanged by U x U."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("invariance", 1e-10)
    rho = entangled_output(n)
    for _ in range(trials):
        UU = np.kron(*(2 * [haar_unitary(n, rng)]))
        res.deviations.append(trace_distance(UU @ rho @ UU.conj().T, rho))
    return res


SUITES = {
    "covariance": covariance,
    "linearity": linearity,
    "permutation": permutation,
    "marginals": marginals,
    "spectrum": spectrum,
    "algebra": algebra,
    "roundtrip": roundtrip,
    "invariance": invariance,
}


def run_suite(name, n=3, trials=100, seed=0):
    return SUITES[name](n, trials, seed)
