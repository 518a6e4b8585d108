import pytest

from possim import _jit

BACKENDS = ["numba", "numpy"] if _jit.HAVE_NUMBA else ["numpy"]

_acceptance: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


@pytest.fixture(params=BACKENDS)
def backend(request):
    with _jit.using(request.param):
        yield request.param


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    label = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _acceptance[item.nodeid] = (label, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in sorted(_acceptance.values()):
        terminalreporter.write_line(f"{status}  {label}")
