from __future__ import annotations

import pytest

from nafil.catalog import CATALOG

# criterion number -> (status, detail); status is PASS, FAIL or MISMATCH
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(params=sorted(CATALOG), ids=str)
def entry(request):
    return CATALOG[request.param]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")
