"""scikit-learn style wrappers around the map family and the grid oracles."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import ValidationError, check_dimension
from .analysis import entropy_minimizer, fidelity_maximizer
from .covmap import MapParams, apply, canonical_coefficients, positivity_flags


def check_bloch_batch(X, n_dim=None):
    """Coerce ``X`` to a stack of Hermitian Bloch vectors of shape (n, N, N)."""
    X = np.asarray(X, dtype=complex)
    if X.ndim == 2:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2]:
        raise ValidationError(f"expected Bloch vectors of shape (n, N, N), got {X.shape}")
    if n_dim is not None and X.shape[1] != n_dim:
        raise ValidationError(f"expected N = {n_dim}, got {X.shape[1]}")
    if np.abs(X - X.conj().transpose(0, 2, 1)).max(initial=0.0) > 1e-12 * max(
            1.0, np.abs(X).max(initial=0.0)):
        raise ValidationError("Bloch vectors must satisfy m_ij = conj(m_ji)")
    return X


class CovariantMap(TransformerMixin, BaseEstimator):
    """Member of the covariant two-particle map family.

    ``transform`` maps a stack of one-particle Bloch vectors, shape
    (n, N, N), to two-particle density matrices, shape (n, N^2, N^2).

    Parameters
    ----------
    alpha, beta, C : float
        Map parameters (``alpha`` and ``beta`` not multiplied by ``m_11``).
    n_dim : int or None
        One-particle dimension; inferred from the data in ``fit`` if None.
    """

    def __init__(self, alpha=0.0, beta=0.0, C=0.0, n_dim=None):
        self.alpha = alpha
        self.beta = beta
        self.C = C
        self.n_dim = n_dim

    @classmethod
    def from_params(cls, params):
        return cls(alpha=params.alpha, beta=params.beta, C=params.C, n_dim=params.N)

    def fit(self, X=None, y=None):
        if X is None:
            if self.n_dim is None:
                raise ValidationError("n_dim must be given when fitting without data")
            N = check_dimension(self.n_dim)
        else:
            N = check_bloch_batch(X, self.n_dim).shape[1]
        self.params_ = MapParams(N, self.alpha, self.beta, self.C)
        self.n_dim_ = N
        self.coefficients_ = canonical_coefficients(self.params_)
        self.positivity_ = positivity_flags(self.coefficients_)
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = check_bloch_batch(X, self.n_dim_)
        return np.stack([apply(self.params_, m) for m in X])

    @property
    def is_physical_(self):
        check_is_fitted(self, "positivity_")
        return self.positivity_.physical


class EntropyMinimizer(BaseEstimator):
    """Grid-search the ``alpha = 0`` slice for the minimum-entropy map."""

    def __init__(self, n_dim=3, resolution=400, x_range=None, y_range=None):
        self.n_dim = n_dim
        self.resolution = resolution
        self.x_range = x_range
        self.y_range = y_range

    def fit(self, X=None, y=None):
        res = entropy_minimizer(self.n_dim, self.resolution, self.x_range, self.y_range)
        self.result_ = res
        self.best_params_ = MapParams.from_products(self.n_dim, 0.0, res["beta_m11"], res["C"])
        self.entropy_ = res["entropy"]
        return self

    def to_map(self):
        check_is_fitted(self, "best_params_")
        return CovariantMap.from_params(self.best_params_).fit()


class CloningOptimizer(BaseEstimator):
    """Grid-search the physical region for the map maximizing ``<11|rho|11>``."""

    def __init__(self, n_dim=3, resolution=400, window=0.5):
        self.n_dim = n_dim
        self.resolution = resolution
        self.window = window

    def fit(self, X=None, y=None):
        opt = fidelity_maximizer(self.n_dim, self.resolution, self.window)
        self.result_ = opt
        self.best_params_ = MapParams.from_products(self.n_dim, *opt.point)
        self.fidelity_ = -opt.value
        return self

    def to_map(self):
        check_is_fitted(self, "best_params_")
        return CovariantMap.from_params(self.best_params_).fit()
