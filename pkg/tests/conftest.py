import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ORIENTCORR_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow; set ORIENTCORR_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
