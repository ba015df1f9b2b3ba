import json
from fractions import Fraction
from pathlib import Path

import pytest

from symcut.polyhedra import LabeledPolyhedron
from symcut.rootsys import build_root_datum

DATA = Path(__file__).parent / "data"


def chamber(rd, rows):
    return LabeledPolyhedron.from_inequalities(rd, [(b, Fraction(x)) for b, x in rows])


@pytest.fixture(scope="session")
def A1():
    return build_root_datum("A1")


@pytest.fixture(scope="session")
def A2():
    return build_root_datum("A2")


@pytest.fixture(scope="session")
def B2():
    return build_root_datum("B2")


@pytest.fixture(scope="session")
def corpus_expected():
    return json.loads((DATA / "corpus_expected.json").read_text())


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
