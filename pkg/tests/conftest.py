import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from symsearch.domains import VacuumState, make_hanoi, make_mc, make_vacuum  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

_acceptance = []


@pytest.fixture
def vac2():
    return make_vacuum(2, VacuumState(0, (True, True)))


@pytest.fixture
def mc():
    return make_mc()


@pytest.fixture(params=[1, 2, 3], ids=lambda d: f"hanoi{d}")
def hanoi(request):
    return make_hanoi(request.param)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        doc = getattr(report, "criterion", None) or report.nodeid.split("::")[-1]
        notes = [v for k, v in report.user_properties if k == "report"]
        _acceptance.append((doc, report.outcome, notes))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    fn = getattr(item, "function", None)
    if fn is not None and fn.__doc__:
        rep.criterion = fn.__doc__.strip().splitlines()[0]
        if hasattr(item, "callspec"):
            rep.criterion += f" [{item.callspec.id}]"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, outcome, notes in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {doc}")
        for note in notes:
            terminalreporter.write_line(f"      {note}")
