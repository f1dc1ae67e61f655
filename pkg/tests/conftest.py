import pytest

from brauer_qe.construct import QEParams, realize
from brauer_qe.groups import cyclic_group, dihedral_group, direct_product, quaternion_group

# small realisations used by the property tests (all of order <= 400)
CORPUS_PARAMS = [
    QEParams(3, 7, "cyclic", 1, 1, 1),
    QEParams(3, 7, "cyclic", 0, 1),
    QEParams(3, 13, "cyclic", 2, 1, 1),
    QEParams(3, 13, "cyclic", 2, 1, 4),
    QEParams(2, 3, "cyclic", 0, 1),
    QEParams(2, 3, "cyclic", 2, 1, 1),
    QEParams(2, 5, "cyclic", 2, 2, 1),
    QEParams(2, 5, "cyclic", 2, 2, 3),
    QEParams(2, 5, "cyclic", 3, 2, 3),
    QEParams(2, 5, "cyclic", 3, 1, 5),
    QEParams(2, 3, "dihedral", 2, 1, 1, 0),
    QEParams(2, 3, "dihedral", 2, 1, 3, 2),
    QEParams(2, 5, "dihedral", 2, 2, 1, 1),
    QEParams(2, 5, "dihedral", 2, 2, 3, 0),
    QEParams(2, 3, "quaternion", 2, 1, 1, 0),
    QEParams(2, 5, "quaternion", 2, 2, 1, 1),
    QEParams(2, 3, "dihedral", 3, 1, 1, 0),
    QEParams(2, 3, "semidihedral", 3, 1, 1, 0),
]


@pytest.fixture(scope="session")
def corpus():
    return [realize(p) for p in CORPUS_PARAMS]


@pytest.fixture(scope="session")
def small_groups():
    c2 = cyclic_group(2)
    return {
        "C1": cyclic_group(1),
        "C6": cyclic_group(6),
        "C12": cyclic_group(12),
        "V4": direct_product(c2, c2),
        "D8": dihedral_group(8),
        "Q8": quaternion_group(8),
        "D16": dihedral_group(16),
        "C2xC2xC2": direct_product(direct_product(c2, c2), c2),
    }


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
