"""scikit-learn style estimators wrapping the functional pipeline, so the
encoding and the derived features compose with Pipeline and friends."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .classify import EncodingConfig, nearest_neighbor_predict, series_stats
from .encode import GAUSSIAN, encode_series
from .ingest import znormalize


def _as_2d(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected an (n_samples, n_timestamps) array, got shape {X.shape}")
    if X.shape[1] < 2:
        raise ValueError("series need at least 2 samples")
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains non-finite values")
    return X


class MarkovTransitionFieldTransformer(BaseEstimator, TransformerMixin):
    """Encode each series as a (blurred) Markov transition field.

    Each series is normalized and quantized on its own, so ``fit`` only
    validates parameters.

    Parameters
    ----------
    n_bins : int
        Quantization bin count.
    strategy : {"gaussian", "quantile"}
        Breakpoint placement.
    blur_size : int
        Patch side for the aggregation step; 1 keeps the full field.
    kernel : {"gaussian", "average"}
        Patch aggregation kernel.
    sigma : float or None
        Gaussian kernel width; None means ``blur_size / 2``.
    normalize : bool
        Z-normalize before binning (on by default).
    flatten : bool
        Return ``(n_samples, S*S)`` rows instead of an ``(n_samples, S, S)``
        stack, for estimators that need 2-D input.
    """

    def __init__(self, n_bins=8, strategy=GAUSSIAN, blur_size=1, kernel=GAUSSIAN,
                 sigma=None, normalize=True, flatten=False):
        self.n_bins = n_bins
        self.strategy = strategy
        self.blur_size = blur_size
        self.kernel = kernel
        self.sigma = sigma
        self.normalize = normalize
        self.flatten = flatten

    def fit(self, X, y=None):
        _as_2d(X)
        self.n_timestamps_ = np.asarray(X).shape[-1]
        return self

    def transform(self, X):
        X = _as_2d(X)
        fields = [
            encode_series(
                row, n_bins=self.n_bins, strategy=self.strategy,
                blur_size=self.blur_size, kernel=self.kernel, sigma=self.sigma,
                normalize=self.normalize,
            )[0].matrix
            for row in X
        ]
        stack = np.stack(fields)
        return stack.reshape(stack.shape[0], -1) if self.flatten else stack


class NetworkStatsTransformer(BaseEstimator, TransformerMixin):
    """Map each series to its eight network statistics.

    The output columns follow :data:`tempograph.netgraph.STAT_NAMES`.
    """

    def __init__(self, n_bins=50, strategy=GAUSSIAN, blur_size=1, kernel=GAUSSIAN,
                 sigma=None, threshold=0.0, resolution=1.0, seed=0):
        self.n_bins = n_bins
        self.strategy = strategy
        self.blur_size = blur_size
        self.kernel = kernel
        self.sigma = sigma
        self.threshold = threshold
        self.resolution = resolution
        self.seed = seed

    def _config(self) -> EncodingConfig:
        return EncodingConfig(
            n_bins=self.n_bins, strategy=self.strategy, blur_size=self.blur_size,
            kernel=self.kernel, sigma=self.sigma, threshold=self.threshold,
            resolution=self.resolution, seed=self.seed,
        )

    def fit(self, X, y=None):
        _as_2d(X)
        return self

    def transform(self, X):
        X = _as_2d(X)
        config = self._config()
        return np.vstack([series_stats(row, config).as_vector() for row in X])


class OneNearestNeighborClassifier(BaseEstimator, ClassifierMixin):
    """Euclidean 1-NN with ties broken by the earliest training index.

    Parameters
    ----------
    normalize : bool
        Z-normalize every row before fitting and predicting.
    """

    def __init__(self, normalize=False):
        self.normalize = normalize

    def _prepare(self, X) -> np.ndarray:
        X = _as_2d(X)
        if self.normalize:
            X = np.vstack([znormalize(row) for row in X])
        return X

    def fit(self, X, y):
        X = self._prepare(X)
        y = np.asarray(y)
        if y.shape[0] != X.shape[0]:
            raise ValueError(f"{X.shape[0]} rows but {y.shape[0]} labels")
        self.train_x_ = X
        self.train_y_ = y
        return self

    def predict(self, X):
        if not hasattr(self, "train_x_"):
            raise NotFittedError("fit must be called before predict")
        labels, _ = nearest_neighbor_predict(self.train_x_, self.train_y_, self._prepare(X))
        return labels
