import json
import sys
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ORACLE = json.loads((Path(__file__).parent / "oracle_values.json").read_text())


@pytest.fixture(scope="session")
def oracle():
    """Reference values recomputed independently by ``tools/derive_oracles.py``."""
    return ORACLE


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(mod.REPORT.items()):
            terminalreporter.write_line(line)
