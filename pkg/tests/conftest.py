import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

REPO = Path(__file__).resolve().parent.parent
DESK_CORPUS = REPO / "corpus" / "desk"


def random_histogram(rng: np.random.Generator) -> np.ndarray:
    """Random 256-bin histogram mixing spikes, flat bands and Gaussian bumps."""
    levels = np.arange(256)
    bins = np.zeros(256)
    for _ in range(rng.integers(1, 5)):
        kind = rng.integers(3)
        weight = rng.uniform(1, 5000)
        if kind == 0:
            bins[rng.integers(256)] += weight * rng.uniform(1, 20)
        elif kind == 1:
            lo = int(rng.integers(256))
            hi = int(rng.integers(lo, 256))
            bins[lo : hi + 1] += weight / (hi - lo + 1) * rng.uniform(1, 50)
        else:
            mu = rng.uniform(-20, 275)
            sd = rng.uniform(0.5, 60)
            bins += weight * np.exp(-0.5 * ((levels - mu) / sd) ** 2)
    bins = np.floor(bins).astype(np.int64)
    if bins.sum() == 0:
        bins[rng.integers(256)] = 1
    return bins


@pytest.fixture
def rng():
    return np.random.default_rng(20190110)


@pytest.fixture
def uniform_hist():
    return np.ones(256, dtype=np.int64)


# (number, description, passed, detail) rows filled in by test_acceptance
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status} [{number}] {description}: {detail}")
