import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

#: Root searched for UCR datasets: <data_root>/<Name>/<Name>_TRAIN.tsv etc.
#: Overridable through the TEMPOGRAPH_DATA environment variable.
DEFAULT_DATA_ROOT = Path(__file__).resolve().parent.parent / "data" / "UCR"


def ucr_data_root() -> Path:
    import os

    return Path(os.environ.get("TEMPOGRAPH_DATA", DEFAULT_DATA_ROOT))


def find_ucr_split(name: str, split: str) -> Path | None:
    root = ucr_data_root() / name
    for suffix in (".tsv", ".txt", ""):
        candidate = root / f"{name}_{split}{suffix}"
        if candidate.exists():
            return candidate
    return None


def require_ucr(name: str) -> tuple[Path, Path]:
    """Paths of both splits, or a pytest skip for non-acceptance tests."""
    train, test = find_ucr_split(name, "TRAIN"), find_ucr_split(name, "TEST")
    if train is None or test is None:
        pytest.skip(f"UCR dataset {name} not present under {ucr_data_root()}")
    return train, test
