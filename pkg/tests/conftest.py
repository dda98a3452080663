from importlib.resources import files

import pytest

from sdcrit.serialize import load_system

DATA = files("sdcrit") / "data"


@pytest.fixture(scope="session")
def worked():
    return load_system(DATA / "worked_example.json")


@pytest.fixture(scope="session")
def bimonoid():
    return load_system(DATA / "bimonoid.json")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
