import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from residuum.constructions import complex_algebra, cyclic_group, heyting_from_dl, heyting_from_poset
from residuum.lattice import FinPoset, boolean_lattice, chain

# criterion id -> list of (passed, title); filled by test_acceptance
ACCEPTANCE: dict[int, list] = {}


def lists(alg):
    lat = alg.lat
    return lat.leq.tolist(), lat.join.tolist(), lat.meet.tolist(), alg.lres.tolist(), alg.rres.tolist()


@pytest.fixture(scope="session")
def z3():
    return complex_algebra(cyclic_group(3), "Z3")


@pytest.fixture(scope="session")
def bool2():
    """Two-element Boolean algebra with classical implication."""
    return heyting_from_dl(chain(2), "B2")


@pytest.fixture(scope="session")
def bool4():
    return heyting_from_dl(boolean_lattice(2), "B4")


@pytest.fixture(scope="session")
def vee():
    """Downsets of the poset with one bottom under two incomparable tops."""
    return heyting_from_poset(FinPoset.from_pairs(3, [(0, 1), (0, 2)]))


@pytest.fixture(scope="session")
def wedge():
    """Downsets of the poset with two minimal points under one top."""
    return heyting_from_poset(FinPoset.from_pairs(3, [(0, 2), (1, 2)]))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        for passed, title in ACCEPTANCE[cid]:
            terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  [{cid}] {title}")
