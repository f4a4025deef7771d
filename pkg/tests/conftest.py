import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

from pec import parse_domain

ROOT = pathlib.Path(__file__).resolve().parent.parent
EXAMPLES = ROOT / "examples"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


def load_domain(name: str):
    return parse_domain((EXAMPLES / name).read_text())


@pytest.fixture(scope="session")
def coin():
    return load_domain("coin.pec")


@pytest.fixture(scope="session")
def antibiotic():
    return load_domain("antibiotic.pec")


@pytest.fixture(scope="session")
def keys():
    return load_domain("keys.pec")
