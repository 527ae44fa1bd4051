import numpy as np
import pytest

_ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20260501)


@pytest.fixture
def acceptance_record():
    """Callable ``record(number, title, ok)`` that feeds the summary lines."""
    def record(number, title, ok, detail=""):
        if _ACCEPTANCE.get(number, ("", ""))[1] == "FAIL":
            return
        _ACCEPTANCE[number] = (title, "PASS" if ok else "FAIL", detail)
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    if rep.failed:
        _ACCEPTANCE[number] = (title, "FAIL", "")
    elif number not in _ACCEPTANCE:
        _ACCEPTANCE[number] = (title, "PASS", "")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, detail = _ACCEPTANCE[number]
        line = f"criterion {number:2d}  {status}  {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
