import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    entry = _results.setdefault(number, {"title": title, "passed": [], "failed": []})
    (entry["passed"] if rep.passed else entry["failed"]).append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        e = _results[number]
        verdict = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {number:>2} {verdict}  {e['title']}  ({len(e['passed'])} passed"
        line += f", {len(e['failed'])} failed: {', '.join(e['failed'])})" if e["failed"] else ")"
        tr.write_line(line)
