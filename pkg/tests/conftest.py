from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from fixture_builders import table1_dataset  # noqa: E402

REPO_ROOT = Path(__file__).resolve().parent.parent
TABLE1_DIR = REPO_ROOT / "data" / "table1_fixture"
DEMO_DIR = REPO_ROOT / "data" / "demo"


@pytest.fixture(scope="session")
def table1():
    return table1_dataset()


@pytest.fixture(scope="session")
def table1_dir() -> Path:
    return TABLE1_DIR


@pytest.fixture(scope="session")
def demo_dir() -> Path:
    return DEMO_DIR
