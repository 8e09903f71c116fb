import time

import pytest

_RESULTS = pytest.StashKey[dict]()


class Criterion:
    """Collects failures for one acceptance criterion and times it."""

    def __init__(self, number: int, title: str, budget: float | None):
        self.number = number
        self.title = title
        self.budget = budget
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, cond, message: str) -> bool:
        if not cond:
            self.failures.append(message)
        return bool(cond)

    def note(self, text: str) -> None:
        self.notes.append(text)


@pytest.fixture
def criterion(request):
    results = request.config.stash.setdefault(_RESULTS, {})

    class _Run:
        def __init__(self, number, title, budget=None):
            self.c = Criterion(number, title, budget)

        def __enter__(self):
            self.start = time.perf_counter()
            return self.c

        def __exit__(self, exc_type, exc, tb):
            c = self.c
            elapsed = time.perf_counter() - self.start
            if c.budget is not None and elapsed >= c.budget:
                c.failures.append(f"runtime {elapsed:.2f}s exceeds {c.budget:g}s")
            if exc is not None:
                c.failures.append(f"{exc_type.__name__}: {exc}")
            status = "FAIL" if c.failures else "PASS"
            detail = "; ".join(c.failures[:4] + (["..."] if len(c.failures) > 4 else []) if c.failures else c.notes)
            line = f"criterion {c.number:>2} {status} ({elapsed:.2f}s) {c.title}" + (f" | {detail}" if detail else "")
            results[c.number] = line
            print(line)
            if exc is None and c.failures:
                raise AssertionError("\n".join(c.failures))
            return False

    return _Run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
