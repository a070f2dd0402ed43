from __future__ import annotations

import pytest

_LINES: list[str] = []


class Ledger:
    """Collects one verdict line per acceptance criterion for the terminal summary."""

    def record(self, label: str, ok: bool, detail: str = "") -> bool:
        _LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
        return ok


@pytest.fixture(scope="session")
def ledger() -> Ledger:
    return Ledger()


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
