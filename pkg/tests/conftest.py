import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from foliation_barcode.foliation import builtin_example  # noqa: E402


@pytest.fixture
def section4():
    return builtin_example("section4")


@pytest.fixture
def sphere():
    return builtin_example("morse-sphere")


@pytest.fixture
def north_south():
    return builtin_example("north-south")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
