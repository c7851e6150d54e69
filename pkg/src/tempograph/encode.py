"""Quantization, Markov transition matrix, transition-field expansion and
patch blurring: the series-to-matrix encoding pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats as scipy_stats

from ._validation import check_positive_int, check_values
from .exceptions import BinningError, ParseError
from .ingest import TimeSeries, znormalize

GAUSSIAN = "gaussian"
QUANTILE = "quantile"


@dataclass(frozen=True)
class Binner:
    """A quantization dictionary over the real line.

    ``breakpoints`` holds the ``n_bins - 1`` strictly increasing cut points;
    bin ``b`` (1-based) covers ``(breakpoints[b-2], breakpoints[b-1]]``-style
    half lines with ties going to the upper bin.
    """

    mode: str
    n_bins: int
    breakpoints: np.ndarray

    def assign(self, values) -> np.ndarray:
        """Bin index in [1, n_bins] per value; ties on a breakpoint go up."""
        values = np.asarray(values, dtype=np.float64)
        return np.searchsorted(self.breakpoints, values, side="right") + 1


def make_binner(mode: str, n_bins: int, data=None) -> Binner:
    """Build a quantization dictionary.

    Parameters
    ----------
    mode : {"gaussian", "quantile"}
        ``gaussian`` places breakpoints at standard-normal quantiles
        ``k/n_bins`` so each bin carries probability mass ``1/n_bins``;
        ``quantile`` uses empirical quantiles of ``data`` (linear
        interpolation).
    n_bins : int
        Bin count, at least 2.
    data : array-like, optional
        Sample pool, required for ``quantile`` mode with at least ``n_bins``
        distinct values.

    Raises
    ------
    BinningError
        In quantile mode when the pool cannot support ``n_bins`` distinct
        bins (degenerate dictionary).
    """
    n_bins = check_positive_int(n_bins, "n_bins", minimum=2)
    probs = np.arange(1, n_bins) / n_bins
    if mode == GAUSSIAN:
        breakpoints = scipy_stats.norm.ppf(probs)
    elif mode == QUANTILE:
        if data is None:
            raise ValueError("quantile mode needs a sample pool")
        pool = check_values(data, name="data")
        if np.unique(pool).size < n_bins:
            raise BinningError(
                f"quantile mode needs >= {n_bins} distinct values, "
                f"got {np.unique(pool).size}"
            )
        breakpoints = np.quantile(pool, probs)
        if np.any(np.diff(breakpoints) <= 0):
            raise BinningError(
                f"pool too concentrated for {n_bins} bins: quantile breakpoints collide"
            )
    else:
        raise ValueError(f"unknown binning mode {mode!r}")
    return Binner(mode=mode, n_bins=n_bins, breakpoints=breakpoints)


def assign_bins(series, binner: Binner) -> np.ndarray:
    """Map each sample to its bin index in [1, n_bins]."""
    values = series.values if isinstance(series, TimeSeries) else series
    return binner.assign(check_values(values))


@dataclass(frozen=True)
class MarkovMatrix:
    """First-order bin-to-bin transition statistics.

    ``counts[i, j]`` is the number of time steps whose sample sits in bin
    ``i+1`` with the next sample in bin ``j+1``; ``weights`` is ``counts``
    row-normalized (rows index the source bin). Rows with no outgoing
    transition stay all-zero rather than being smoothed to uniform.
    """

    n_bins: int
    weights: np.ndarray
    counts: np.ndarray


def markov_matrix(bins, n_bins: int) -> MarkovMatrix:
    """Count adjacent-step bin transitions and row-normalize them."""
    n_bins = check_positive_int(n_bins, "n_bins", minimum=1)
    bins = np.asarray(bins, dtype=np.int64)
    if bins.ndim != 1 or bins.size < 2:
        raise ValueError(f"need a 1-D bin sequence of length >= 2, got shape {bins.shape}")
    if bins.min() < 1 or bins.max() > n_bins:
        raise ValueError(f"bin indices must lie in [1, {n_bins}]")
    flat = (bins[:-1] - 1) * n_bins + (bins[1:] - 1)
    counts = np.bincount(flat, minlength=n_bins * n_bins).reshape(n_bins, n_bins)
    totals = counts.sum(axis=1, keepdims=True)
    weights = np.divide(
        counts, totals, out=np.zeros((n_bins, n_bins), dtype=np.float64),
        where=totals > 0,
    )
    return MarkovMatrix(n_bins=n_bins, weights=weights, counts=counts)


@dataclass(frozen=True)
class TransitionField:
    """The field matrix plus the vertex-to-segment inverse-map metadata.

    ``matrix[k, l]`` is the transition weight between the bins of the
    samples covered by vertices ``k`` and ``l``. ``segment_len`` samples map
    to one vertex; vertex ``i`` covers time indices
    ``[i * segment_len, min((i+1) * segment_len, source_len))``, a partition
    of ``[0, source_len)``.
    """

    matrix: np.ndarray
    segment_len: int
    source_len: int
    n_bins: int

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])


def transition_field(bins, markov: MarkovMatrix) -> TransitionField:
    """Spread the Markov matrix over all time-step pairs.

    The output entry at ``(k, l)`` is the transition weight from the bin of
    sample ``k`` to the bin of sample ``l``; the main diagonal therefore
    holds each sample's self-transition weight.
    """
    bins = np.asarray(bins, dtype=np.int64)
    if bins.size < 2:
        raise ValueError("need at least 2 samples to build a field")
    idx = bins - 1
    matrix = markov.weights[np.ix_(idx, idx)]
    return TransitionField(
        matrix=matrix, segment_len=1, source_len=int(bins.size), n_bins=markov.n_bins
    )


AVERAGE = "average"


def _gaussian_kernel(m: int, sigma: float) -> np.ndarray:
    center = (m - 1) / 2.0
    offsets = np.arange(m, dtype=np.float64) - center
    sq = offsets[:, None] ** 2 + offsets[None, :] ** 2
    return np.exp(-sq / (2.0 * sigma * sigma))


def blur(field: TransitionField, m: int, kernel: str = GAUSSIAN,
         sigma: float | None = None) -> TransitionField:
    """Aggregate the field over non-overlapping ``m x m`` patches.

    The output side length is ``ceil(size / m)``; edge patches at
    non-divisible sizes are truncated and the kernel weights renormalized
    over the cells actually present, so a constant field stays constant.

    Parameters
    ----------
    field : TransitionField
    m : int
        Patch side; ``m == 1`` is the identity.
    kernel : {"gaussian", "average"}
        ``average`` is the plain patch mean (and preserves the global mean
        exactly when ``m`` divides the size); ``gaussian`` weights the patch
        with a bivariate kernel of width ``sigma`` (default ``m / 2``).
    """
    m = check_positive_int(m, "m")
    if m == 1:
        return field
    if kernel == AVERAGE:
        weights = np.ones((m, m), dtype=np.float64)
    elif kernel == GAUSSIAN:
        sigma = m / 2.0 if sigma is None else float(sigma)
        if sigma <= 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        weights = _gaussian_kernel(m, sigma)
    else:
        raise ValueError(f"unknown blur kernel {kernel!r}")

    size = field.size
    out_size = math.ceil(size / m)
    full = (size // m) * m
    matrix = field.matrix
    out = np.empty((out_size, out_size), dtype=np.float64)

    # Bulk of the field: whole m x m patches, one vectorized contraction.
    k = full // m
    if k:
        blocks = matrix[:full, :full].reshape(k, m, k, m)
        out[:k, :k] = np.einsum("aibj,ij->ab", blocks, weights) / weights.sum()
    # Truncated edge patches: renormalize over the present cells.
    for bi in range(out_size):
        for bj in range(out_size):
            if bi < k and bj < k:
                continue
            rows = slice(bi * m, min((bi + 1) * m, size))
            cols = slice(bj * m, min((bj + 1) * m, size))
            w = weights[: rows.stop - rows.start, : cols.stop - cols.start]
            out[bi, bj] = float((matrix[rows, cols] * w).sum() / w.sum())

    return TransitionField(
        matrix=out,
        segment_len=field.segment_len * m,
        source_len=field.source_len,
        n_bins=field.n_bins,
    )


def encode_series(series, n_bins: int = 8, strategy: str = GAUSSIAN,
                  blur_size: int = 1, kernel: str = GAUSSIAN,
                  sigma: float | None = None, normalize: bool = True):
    """Run the full pipeline: normalize, bin, count transitions, expand, blur.

    Returns
    -------
    (TransitionField, MarkovMatrix, np.ndarray)
        The (possibly blurred) field, the bin-transition matrix, and the bin
        index sequence.
    """
    values = series.values if isinstance(series, TimeSeries) else check_values(series)
    if values.size < 2:
        raise ValueError("need at least 2 samples to encode")
    if normalize:
        values = znormalize(values)
    binner = make_binner(strategy, n_bins, data=values if strategy == QUANTILE else None)
    bins = binner.assign(values)
    markov = markov_matrix(bins, n_bins)
    field = transition_field(bins, markov)
    if blur_size > 1:
        field = blur(field, blur_size, kernel=kernel, sigma=sigma)
    return field, markov, bins


FIELD_MAGIC = "tempograph-field"


def write_field(field: TransitionField, path, fmt: str = "text") -> None:
    """Serialize a field to disk.

    ``text`` (default) writes a one-line header
    ``tempograph-field n=<source_len> m=<segment_len> q=<n_bins>`` followed by
    row-major rows of ``repr``-precision floats; the output bytes are a pure
    function of the field. ``npz`` stores the matrix and the same three
    header integers in a numpy archive.
    """
    path = Path(path)
    if fmt == "text":
        with path.open("w", encoding="utf-8") as handle:
            handle.write(
                f"{FIELD_MAGIC} n={field.source_len} m={field.segment_len} q={field.n_bins}\n"
            )
            for row in field.matrix:
                handle.write(" ".join(repr(v) for v in row.tolist()) + "\n")
    elif fmt == "npz":
        np.savez(
            path,
            matrix=field.matrix,
            header=np.array([field.source_len, field.segment_len, field.n_bins], dtype=np.int64),
        )
    else:
        raise ValueError(f"unknown field format {fmt!r}")


def read_field(path) -> TransitionField:
    """Load a field written by :func:`write_field` (either format)."""
    path = Path(path)
    if path.suffix == ".npz":
        archive = np.load(path)
        n, m, q = (int(v) for v in archive["header"])
        return TransitionField(
            matrix=archive["matrix"], segment_len=m, source_len=n, n_bins=q
        )
    with path.open("r", encoding="utf-8") as handle:
        header = handle.readline().split()
        if not header or header[0] != FIELD_MAGIC:
            raise ParseError(f"{path}:1: not a {FIELD_MAGIC} file")
        meta = dict(part.split("=", 1) for part in header[1:])
        try:
            n, m, q = int(meta["n"]), int(meta["m"]), int(meta["q"])
        except (KeyError, ValueError):
            raise ParseError(f"{path}:1: malformed field header") from None
        matrix = np.loadtxt(handle, dtype=np.float64, ndmin=2)
    return TransitionField(matrix=matrix, segment_len=m, source_len=n, n_bins=q)
