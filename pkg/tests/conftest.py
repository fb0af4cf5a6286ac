import pathlib

import pytest

from nervekit import build_example

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def z2_rel():
    return build_example("bg:z2", max_dim=2)


@pytest.fixture(scope="session")
def z2_rel_d3():
    return build_example("bg:z2", max_dim=3)


@pytest.fixture(scope="session")
def z2_rel_d4():
    return build_example("bg:z2", max_dim=4)


@pytest.fixture(scope="session")
def poset01():
    return build_example("discrete:poset01", max_dim=2)


@pytest.fixture(scope="session")
def poset012():
    return build_example("discrete:poset012", max_dim=2)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
