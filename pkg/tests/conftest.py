"""
Shared fixtures for the witnesspy test-suite.

Long runs are gated: tests marked slow need --run-slow, tests marked
extended need --run-extended plus the WITNESSPY_W70_MATRIX and
WITNESSPY_W70_VECTORS files.
"""

from typing import Dict, List
import csv

import numpy as np
import pytest

from witnesspy.core import WitnessMatrix, gen_family, make_doubled


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run minutes-long tests")
    parser.addoption("--run-extended", action="store_true", default=False, help="run hours-long published-witness tests")


def pytest_collection_modifyitems(config, items):
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    skip_extended = pytest.mark.skip(reason="needs --run-extended")
    for item in items:
        if "slow" in item.keywords and not config.getoption("--run-slow"):
            item.add_marker(skip_slow)
        if "extended" in item.keywords and not config.getoption("--run-extended"):
            item.add_marker(skip_extended)


def random_matrix(rng: np.random.Generator, n: int, m: int, low: int = -9, high: int = 9) -> WitnessMatrix:
    return WitnessMatrix(rng.integers(low, high + 1, size=(n, m), dtype=np.int64))


def read_csv_rows(path) -> List[Dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def random_corpus(seed: int, count: int, max_side: int = 10) -> List[WitnessMatrix]:
    rng = np.random.default_rng(seed)
    return [
        random_matrix(rng, int(rng.integers(1, max_side + 1)), int(rng.integers(1, max_side + 1)))
        for _ in range(count)
    ]


@pytest.fixture
def chsh() -> WitnessMatrix:
    return WitnessMatrix.from_rows([[1, 1], [1, -1]])


@pytest.fixture
def m4() -> WitnessMatrix:
    return gen_family(4)


@pytest.fixture
def doubled_chsh(chsh) -> WitnessMatrix:
    return make_doubled(chsh)


@pytest.fixture(scope="session")
def corpus() -> List[WitnessMatrix]:
    """200 seeded random integer matrices, n, m <= 10, entries in [-9, 9]."""
    return random_corpus(seed=20240611, count=200)


@pytest.fixture
def chsh_vectors():
    """Optimal CHSH configuration: b_1 = x, b_2 = y, a_{1,2} = (b_1 +- b_2) / sqrt(2)."""
    b = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    a = np.array([[1.0, 1.0, 0.0], [1.0, -1.0, 0.0]]) / np.sqrt(2.0)
    return a, b


@pytest.fixture
def write_text(tmp_path):
    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
