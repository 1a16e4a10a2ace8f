import time

import pytest

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


class Criterion:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.start = time.perf_counter()
        self.elapsed = None

    def check_time(self):
        self.elapsed = time.perf_counter() - self.start
        assert self.elapsed < self.budget, f"took {self.elapsed:.2f}s, budget {self.budget}s"


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title, budget = marker.args
    crit = Criterion(number, title, budget)
    yield crit
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    _criteria.append((number, title, ok, crit.elapsed, budget))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, budget_s): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, budget in sorted(_criteria):
        took = f"{elapsed:.2f}s" if elapsed is not None else "n/a"
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  {number}. {title}  ({took}, budget {budget}s)"
        )
