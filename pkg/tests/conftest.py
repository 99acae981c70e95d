import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gpsne.sne_solver import ScfConfig, solve_nr  # noqa: E402
from gpsne.unit_scales import PhysicalConstants  # noqa: E402


@pytest.fixture(scope="session")
def nr_solver_units():
    """Newtonian ground state on the default grid, hbar = G = m = 1."""
    return solve_nr(1.0, PhysicalConstants.solver(), ScfConfig())


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.format_line(number))
