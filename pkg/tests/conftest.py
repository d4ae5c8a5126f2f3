import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jordanlab.rings import build_matrix_ring, build_product_ring, build_triangular_ring, build_zmod  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def z3():
    return build_zmod(3)


@pytest.fixture(scope="session")
def z4():
    return build_zmod(4)


@pytest.fixture(scope="session")
def m2(z3):
    return build_matrix_ring(z3, 2)


@pytest.fixture(scope="session")
def t2(z3):
    return build_triangular_ring(z3, 2)


@pytest.fixture(scope="session")
def z3z3(z3):
    return build_product_ring(z3, z3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
