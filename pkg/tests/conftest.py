import time

import pytest

_criteria: list[tuple[int, str, bool, str]] = []


class Criterion:
    """Records one acceptance criterion outcome and enforces its runtime budget."""

    def __init__(self, number: int, title: str, budget_s: float):
        self.number, self.title, self.budget_s = number, title, budget_s
        self.details: list[str] = []

    def note(self, text: str) -> None:
        self.details.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.budget_s
        detail = "; ".join(self.details + [f"{elapsed:.2f}s of {self.budget_s:g}s"])
        if exc_type is not None:
            detail = f"{exc_type.__name__}: {exc}".splitlines()[0] + "; " + detail
        _criteria.append((self.number, self.title, ok, detail))
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} ({detail})"
        print(line)
        if exc_type is None and not ok:
            pytest.fail(f"criterion {self.number} exceeded its runtime budget: {detail}")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_criteria):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({detail})")
