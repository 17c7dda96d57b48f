import pytest

from pqr.corpus import Document
from pqr.index import build_index

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    title = marker.args[1]
    passed, failed = _criteria.get(key, (title, True, False))[1:]
    if report.failed:
        failed = True
        passed = False
    _criteria[key] = (title, passed, failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=str):
        title, passed, _ = _criteria[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {title}")


@pytest.fixture
def small_index():
    docs = [
        Document("d1", "a b a"),
        Document("d2", "a c"),
        Document("d3", "x y z"),
    ]
    return build_index(docs)
