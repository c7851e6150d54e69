"""Time-series containers, normalization, PAA and UCR-format text loading."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._validation import check_positive_int, check_values
from .exceptions import ParseError

#: Population standard deviations below this are treated as zero.
DEGENERATE_STD = 1e-12


@dataclass
class TimeSeries:
    """An ordered, finite, real-valued sample sequence.

    Parameters
    ----------
    values : array-like
        The samples, coerced to float64.
    label : int or None
        Optional class label.
    name : str
        Identifier used in reports and serialized artifacts.
    """

    values: np.ndarray
    label: int | None = None
    name: str = ""

    def __post_init__(self):
        self.values = check_values(self.values, name="values")

    def __len__(self) -> int:
        return int(self.values.size)

    def replace_values(self, values) -> "TimeSeries":
        """Copy of this series with new samples but the same label and name."""
        return TimeSeries(values=values, label=self.label, name=self.name)


@dataclass
class Dataset:
    """A labeled train/test split of equal-length series."""

    train: list[TimeSeries] = field(default_factory=list)
    test: list[TimeSeries] = field(default_factory=list)
    name: str = ""

    def validate(self) -> "Dataset":
        """Check the split invariants: labels present, one shared length."""
        lengths = set()
        for split_name, split in (("train", self.train), ("test", self.test)):
            for i, series in enumerate(split):
                if series.label is None:
                    raise ValueError(f"{self.name or 'dataset'} {split_name}[{i}] has no label")
                lengths.add(len(series))
        if len(lengths) > 1:
            raise ValueError(
                f"{self.name or 'dataset'} mixes series lengths {sorted(lengths)}"
            )
        return self


def znormalize(series):
    """Shift and scale to zero mean and unit population standard deviation.

    Accepts a :class:`TimeSeries` (returned as a new ``TimeSeries``) or a
    plain array (returned as an array). A series whose standard deviation is
    below ``DEGENERATE_STD`` maps to all zeros instead of dividing by zero.
    """
    if isinstance(series, TimeSeries):
        return series.replace_values(znormalize(series.values))
    values = check_values(series, min_length=2)
    std = float(values.std())
    if std < DEGENERATE_STD:
        return np.zeros_like(values)
    return (values - values.mean()) / std


def paa(series, n_frames: int):
    """Piecewise aggregate approximation: frame means at a reduced length.

    Sample ``t`` belongs to frame ``i`` when
    ``floor(i*n/w) <= t < floor((i+1)*n/w)``, which partitions the series
    for every ``w`` between 1 and ``n``.
    """
    if isinstance(series, TimeSeries):
        return series.replace_values(paa(series.values, n_frames))
    values = check_values(series)
    n = values.size
    w = check_positive_int(n_frames, "n_frames")
    if w > n:
        raise ValueError(f"n_frames must be <= series length {n}, got {w}")
    if w == n:
        return values.copy()
    # Integer arithmetic keeps the frame boundaries exact.
    bounds = [(i * n) // w for i in range(w + 1)]
    return np.array(
        [values[bounds[i]:bounds[i + 1]].mean() for i in range(w)], dtype=np.float64
    )


def _detect_delimiter(line: str) -> str | None:
    """Pick the field separator for a UCR record: tab, comma, or whitespace."""
    if "\t" in line:
        return "\t"
    if "," in line:
        return ","
    return None  # str.split() default: any whitespace run


def _parse_label(token: str, path: Path, lineno: int) -> int:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: label {token!r} is not numeric") from None
    if not math.isfinite(value) or abs(value - round(value)) > 1e-9:
        raise ParseError(f"{path}:{lineno}: label {token!r} is not an integer")
    return int(round(value))


def load_ucr(path, delimiter: str | None = None) -> list[TimeSeries]:
    """Load one UCR-format split: each line is ``label, v_1, ..., v_n``.

    Parameters
    ----------
    path : str or Path
        File with one record per line; blank lines are ignored.
    delimiter : str or None
        Field separator. ``None`` auto-detects tab, then comma, falling back
        to whitespace.

    Returns
    -------
    list of TimeSeries
        One series per record, labels parsed as integers.

    Raises
    ------
    ParseError
        On a malformed field (names the line) or on ragged record lengths;
        rows are never padded silently.
    """
    path = Path(path)
    series: list[TimeSeries] = []
    width: int | None = None
    with path.open("r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            sep = delimiter if delimiter is not None else _detect_delimiter(line)
            tokens = [t for t in line.split(sep) if t != ""]
            if len(tokens) < 2:
                raise ParseError(f"{path}:{lineno}: record has no samples")
            label = _parse_label(tokens[0], path, lineno)
            try:
                values = np.array(tokens[1:], dtype=np.float64)
            except ValueError:
                bad = next(t for t in tokens[1:] if not _is_float(t))
                raise ParseError(
                    f"{path}:{lineno}: sample {bad!r} is not a number"
                ) from None
            if not np.all(np.isfinite(values)):
                raise ParseError(f"{path}:{lineno}: record contains non-finite samples")
            if width is None:
                width = values.size
            elif values.size != width:
                raise ParseError(
                    f"{path}:{lineno}: record length {values.size} differs from "
                    f"{width} seen earlier (ragged rows are an error)"
                )
            series.append(
                TimeSeries(values=values, label=label, name=f"{path.stem}[{len(series)}]")
            )
    if not series:
        raise ParseError(f"{path}: file holds no records")
    return series


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_ucr_dataset(train_path, test_path, name: str = "", delimiter: str | None = None) -> Dataset:
    """Load the two split files of a UCR dataset and validate the invariants."""
    train_path, test_path = Path(train_path), Path(test_path)
    dataset = Dataset(
        train=load_ucr(train_path, delimiter=delimiter),
        test=load_ucr(test_path, delimiter=delimiter),
        name=name or train_path.stem.replace("_TRAIN", ""),
    )
    return dataset.validate()


def write_ucr(series: list[TimeSeries], path, delimiter: str = ",") -> None:
    """Serialize series back to the UCR text format with ``repr`` precision.

    Loading the output reproduces the numeric content bit-identically.
    """
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for item in series:
            if item.label is None:
                raise ValueError(f"series {item.name!r} has no label to serialize")
            fields = [str(item.label)] + [repr(v) for v in item.values.tolist()]
            handle.write(delimiter.join(fields) + "\n")
