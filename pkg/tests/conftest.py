import random

import pytest
from hypothesis import strategies as st

from lpmbergman.lpm import Lpm
from lpmbergman.verify import random_connected_pair

R1 = ("NNEE", "EENN")
R2 = ("NNEENEE", "EENEENN")
R3 = ("NNNNENE", "ENENNNN")


@pytest.fixture(scope="session")
def r1():
    return Lpm.from_words(*R1)


@pytest.fixture(scope="session")
def r2():
    return Lpm.from_words(*R2)


@pytest.fixture(scope="session")
def r3():
    return Lpm.from_words(*R3)


@st.composite
def connected_pairs(draw, max_steps=9):
    n = draw(st.integers(2, max_steps))
    r = draw(st.integers(1, n - 1))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_pair(n - r, r, random.Random(seed))


# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
