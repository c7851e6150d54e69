"""1-NN classification on raw series and on raw-plus-network-statistics
features, plus per-label significance testing of the statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as scipy_stats
from scipy.spatial.distance import cdist

from .encode import GAUSSIAN, encode_series
from .ingest import Dataset, TimeSeries, znormalize
from .netgraph import STAT_NAMES, build_graph, graph_stats

#: Standard deviations below this leave a standardized coordinate at zero.
_TINY_STD = 1e-12


@dataclass(frozen=True)
class EncodingConfig:
    """The encode-then-graph settings shared by every series of a run."""

    n_bins: int = 50
    strategy: str = GAUSSIAN
    blur_size: int = 1
    kernel: str = GAUSSIAN
    sigma: float | None = None
    threshold: float = 0.0
    resolution: float = 1.0
    seed: int = 0


def series_stats(series, config: EncodingConfig = EncodingConfig()):
    """Encode one series and summarize its graph: the 8 statistics."""
    field, _, _ = encode_series(
        series, n_bins=config.n_bins, strategy=config.strategy,
        blur_size=config.blur_size, kernel=config.kernel, sigma=config.sigma,
    )
    graph = build_graph(field, threshold=config.threshold)
    return graph_stats(graph, resolution=config.resolution, seed=config.seed)


def per_sample_stats(split: list[TimeSeries], config: EncodingConfig = EncodingConfig()):
    """Statistics row per series plus the per-label mean/std table.

    Returns
    -------
    (np.ndarray, dict)
        An ``(n_series, 8)`` matrix in ``STAT_NAMES`` order and a table
        ``{label: {"mean": [...], "std": [...], "count": k}}`` aggregated
        over each label's rows (population std; a single-series label
        reports std 0).
    """
    if not split:
        raise ValueError("need at least one series")
    rows = np.vstack([series_stats(s, config).as_vector() for s in split])
    labels = [s.label for s in split]
    table: dict[int, dict] = {}
    for label in sorted(set(labels)):
        mask = np.array([lab == label for lab in labels])
        block = rows[mask]
        table[label] = {
            "mean": block.mean(axis=0).tolist(),
            "std": block.std(axis=0).tolist(),
            "count": int(mask.sum()),
        }
    return rows, table


def _feature_matrix(split: list[TimeSeries]) -> np.ndarray:
    lengths = {len(s) for s in split}
    if len(lengths) != 1:
        raise ValueError(f"series lengths differ within a split: {sorted(lengths)}")
    return np.vstack([znormalize(s.values) for s in split])


def standardize_stats(train_rows: np.ndarray, rows: np.ndarray):
    """Scale statistics by the training split's mean and std, per column.

    Columns whose training std is (near) zero carry no information and are
    zeroed instead of dividing by zero.
    """
    mean = train_rows.mean(axis=0)
    std = train_rows.std(axis=0)
    safe = np.where(std > _TINY_STD, std, 1.0)
    out = (rows - mean) / safe
    out[:, std <= _TINY_STD] = 0.0
    return out


def combined_features(raw: np.ndarray, standardized_stats: np.ndarray,
                      alpha: float = 1.0) -> np.ndarray:
    """Concatenate raw values with alpha-weighted standardized statistics."""
    if raw.shape[0] != standardized_stats.shape[0]:
        raise ValueError("raw and statistics row counts differ")
    return np.hstack([raw, alpha * standardized_stats])


def nearest_neighbor_predict(train_x: np.ndarray, train_y: np.ndarray, test_x: np.ndarray):
    """Labels of the Euclidean nearest training row; ties keep the earliest
    training index (argmin order)."""
    if train_x.shape[1] != test_x.shape[1]:
        raise ValueError(
            f"feature dimensions differ: train {train_x.shape[1]}, test {test_x.shape[1]}"
        )
    nearest = cdist(test_x, train_x, metric="euclidean").argmin(axis=1)
    return train_y[nearest], nearest


def one_nn(dataset: Dataset, features: str = "raw",
           config: EncodingConfig = EncodingConfig(), alpha: float = 1.0):
    """1-NN accuracy over a train/test split.

    Parameters
    ----------
    dataset : Dataset
        Labeled split; all series one shared length.
    features : {"raw", "combined"}
        ``raw`` uses the normalized values; ``combined`` appends the eight
        graph statistics, standardized by the training split and weighted
        by ``alpha``.
    config : EncodingConfig
        Encoding settings for the statistics (combined only).
    alpha : float
        Statistics weight in the combined feature space.

    Returns
    -------
    dict
        ``accuracy``, per-item ``predictions``, ``truth`` and the matched
        ``neighbor`` training indices.
    """
    if not dataset.train or not dataset.test:
        raise ValueError("both splits must be nonempty")
    dataset.validate()
    train_x = _feature_matrix(dataset.train)
    test_x = _feature_matrix(dataset.test)
    if features == "combined":
        train_stats, _ = per_sample_stats(dataset.train, config)
        test_stats, _ = per_sample_stats(dataset.test, config)
        train_x = combined_features(train_x, standardize_stats(train_stats, train_stats), alpha)
        test_x = combined_features(test_x, standardize_stats(train_stats, test_stats), alpha)
    elif features != "raw":
        raise ValueError(f"unknown feature space {features!r}")
    train_y = np.array([s.label for s in dataset.train])
    truth = np.array([s.label for s in dataset.test])
    predictions, neighbors = nearest_neighbor_predict(train_x, train_y, test_x)
    return {
        "accuracy": float((predictions == truth).mean()),
        "predictions": predictions.tolist(),
        "truth": truth.tolist(),
        "neighbor": neighbors.tolist(),
    }


def paired_significance(stats_by_label: dict, alpha: float = 0.05) -> dict:
    """Welch's two-sample t-test per statistic between the two labels.

    The input maps each of exactly two labels to an ``(n_i, 8)`` row block.
    A label with fewer than two samples cannot be tested; such statistics
    are reported with ``p = None`` and ``skipped = True``.

    Returns
    -------
    dict
        Per statistic name: ``{"p": float | None, "significant": bool,
        "skipped": bool}`` with significance at the given level.
    """
    if len(stats_by_label) != 2:
        raise ValueError(f"need exactly 2 labels, got {sorted(stats_by_label)}")
    (label_a, block_a), (label_b, block_b) = sorted(stats_by_label.items())
    block_a = np.atleast_2d(np.asarray(block_a, dtype=float))
    block_b = np.atleast_2d(np.asarray(block_b, dtype=float))
    result: dict[str, dict] = {}
    for j, name in enumerate(STAT_NAMES):
        if block_a.shape[0] < 2 or block_b.shape[0] < 2:
            result[name] = {"p": None, "significant": False, "skipped": True}
            continue
        outcome = scipy_stats.ttest_ind(block_a[:, j], block_b[:, j], equal_var=False)
        p = float(outcome.pvalue)
        if np.isnan(p):  # both sides constant and equal
            p = 1.0
        result[name] = {"p": p, "significant": bool(p < alpha), "skipped": False}
    return result
