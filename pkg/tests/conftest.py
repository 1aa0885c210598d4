from __future__ import annotations

from support import ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        res = ACCEPTANCE[n]
        status = "PASS" if res.passed else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} ({res.elapsed:.2f}s) {res.title}")
        for note in res.notes:
            terminalreporter.write_line(f"    {note}")
