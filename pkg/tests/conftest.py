import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from superjordan import catalog  # noqa: E402
from superjordan.exactfield import PrimeField, QuadraticField  # noqa: E402


@pytest.fixture
def gf5():
    return PrimeField(5)


@pytest.fixture
def gf25():
    return QuadraticField(5)


@pytest.fixture
def k3():
    return catalog.get("K3").algebra


@pytest.fixture
def write_sca(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
