import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-long", action="store_true", default=False,
        help="run the long exhaustive checks (an hour or more)")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "long: long-running exhaustive checks, enable with --run-long")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="needs --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
