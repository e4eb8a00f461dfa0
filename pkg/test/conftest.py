from functools import cache
import pytest


def pytest_addoption(parser):
    parser.addoption("--n", action="store", type=int, default=3, help="order of q for the oracle checks")
    parser.addoption(
        "--slow", action="store_true", help="run the full sweeps and the n = 4 checks"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: needs --slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="module")
def n(request):
    return request.config.getoption("--n")


@pytest.fixture(scope="module")
def catalog(n):
    from taftgreen.modcat import module_catalog

    return module_catalog(n)


@pytest.fixture(scope="module")
def presentation(n):
    from taftgreen.greenring import presentation_for

    return presentation_for(n)


@cache
def _derived_tables(n: int):
    from taftgreen.greenring import derive_tables
    from taftgreen.modcat import module_catalog

    return derive_tables(n, max_m=4, max_s=2, catalog=module_catalog(n))


@pytest.fixture(scope="module")
def tables(n):
    return _derived_tables(n)


@pytest.fixture(scope="module")
def tables3():
    """Tables for n = 3 regardless of --n, for the command line tests."""
    return _derived_tables(3)
