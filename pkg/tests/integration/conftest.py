# -*- coding: utf-8 -*-

"""
Pytest configuration
"""

import pytest


def pytest_addoption(parser):
    """Add command line options to the pytest command."""
    parser.addoption(
        "--acceptance", action="store_true",
        help="run the acceptance tests (full-size training runs)")


def pytest_configure(config):
    """Register the markers of the integration tests."""
    config.addinivalue_line(
        "markers", "acceptance: full-size training run, enabled by "
                   "--acceptance")


def pytest_collection_modifyitems(config, items):
    """Skip the acceptance tests unless --acceptance is given."""
    if config.getoption("acceptance"):
        return
    skip = pytest.mark.skip(reason="needs the --acceptance option")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)
