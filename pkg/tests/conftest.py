import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from digitpatterns import kernels  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return kernels.BACKENDS[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
