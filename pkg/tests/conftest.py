import sys
from pathlib import Path

import pytest

# allow "import helpers" from any test module
sys.path.insert(0, str(Path(__file__).resolve().parent))

CORPUS = Path(__file__).resolve().parent.parent / "src" / "proxima" / "corpus"


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def four_points_path() -> Path:
    return CORPUS / "four-points-two-intervals.json"


@pytest.fixture(scope="session")
def seven_points_path() -> Path:
    return CORPUS / "seven-points-plane.json"


@pytest.fixture(scope="session")
def progressions_path() -> Path:
    return CORPUS / "arithmetic-progressions.json"


@pytest.fixture(scope="session")
def segments_path() -> Path:
    return CORPUS / "parallel-segments.json"


@pytest.fixture(scope="session")
def grid_path() -> Path:
    return CORPUS / "parallel-segments-grid.json"
