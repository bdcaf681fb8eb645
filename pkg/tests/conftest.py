from pathlib import Path

import pytest

from fuds.instances import gen_random_3sat, gen_random_tsp, load_instance
from fuds.problems import (
    Cnf3Instance,
    Deceptive2D,
    Deceptive2DInstance,
    MaxSat,
    ScpInstance,
    SetCover,
    Tsp,
)

DATA = Path(__file__).resolve().parents[1] / "src" / "fuds" / "data"
UF150 = DATA / "uf150-645-s0.cnf"
SCP42_LIKE = DATA / "scp42-like.txt"

# 4 rows x 6 columns; optimum is columns {0, 3} at cost 5 (checked by enumeration in tests)
TOY_SCP_ROWS = [[0, 1, 4], [0, 2], [1, 3, 5], [2, 3, 4]]
TOY_SCP_COST = [2, 4, 3, 3, 6, 1]


@pytest.fixture
def toy_scp():
    return ScpInstance(TOY_SCP_ROWS, TOY_SCP_COST)


@pytest.fixture(scope="session")
def uf150():
    return load_instance(UF150, "dimacs-cnf")


def small_problems():
    """One small instance of every problem family, keyed by name."""
    return {
        "deceptive2d": Deceptive2D(Deceptive2DInstance(0.2, 0.3, 0.1)),
        "tsp": Tsp(gen_random_tsp(8, 3)),
        "scp": SetCover(ScpInstance(TOY_SCP_ROWS, TOY_SCP_COST)),
        "sat": MaxSat(gen_random_3sat(20, 60, 5)),
    }


# one "[PASS|FAIL] C<n> ..." line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
