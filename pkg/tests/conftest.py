"""Shared fixtures: the real event file (when present) and synthetic stand-ins.

The real-data fixtures look for the file at $GAMMASEP_DATA or
data/magic04.data relative to the repo root; dataset-dependent tests skip
cleanly when it is absent (scripts/fetch_dataset.py downloads it).
"""

import os
from pathlib import Path

import pytest

from gammasep import clean, load_csv, make_synthetic

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_ENV = "GAMMASEP_DATA"


def magic_path():
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return REPO_ROOT / "data" / "magic04.data"


MAGIC_AVAILABLE = magic_path().exists()
needs_magic = pytest.mark.skipif(
    not MAGIC_AVAILABLE,
    reason=f"real event file not found at {magic_path()} "
           f"(set {DATA_ENV} or run scripts/fetch_dataset.py)")


@pytest.fixture(scope="session")
def magic_dataset():
    return load_csv(magic_path())


@pytest.fixture(scope="session")
def magic_clean(magic_dataset):
    cleaned, _ = clean(magic_dataset)
    return cleaned


@pytest.fixture(scope="session")
def synth():
    return make_synthetic(1500, seed=7)


@pytest.fixture(scope="session")
def synth_clean(synth):
    cleaned, _ = clean(synth)
    return cleaned
