from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from g2csd.moduledb import default_db_root, load_db


@pytest.fixture(scope="session")
def db():
    database = load_db(default_db_root())
    assert not database.diagnostics, database.diagnostics
    return database


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return Path(__file__).parent / "data"
