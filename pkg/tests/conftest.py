import os

import pytest

from services.complex import order_complex
from services.group_action import GroupAction, PermutationGroup, quotient_complex
from services.homology import homology
from services.posets import build_reduced_partition_lattice, build_reduced_subset_lattice


def pytest_collection_modifyitems(config, items):
    if os.getenv("NERVELAB_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set NERVELAB_RUN_SLOW=1 to run the p = 7 computations")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def partition5():
    return build_reduced_partition_lattice(5)


@pytest.fixture(scope="session")
def subset5():
    return build_reduced_subset_lattice(5)


@pytest.fixture(scope="session")
def c5():
    return PermutationGroup.cyclic(5)


@pytest.fixture(scope="session")
def partition5_complex(partition5):
    return order_complex(partition5)


@pytest.fixture(scope="session")
def subset5_complex(subset5):
    return order_complex(subset5)


@pytest.fixture(scope="session")
def partition5_action(c5, partition5):
    return GroupAction.build(c5, partition5)


@pytest.fixture(scope="session")
def subset5_action(c5, subset5):
    return GroupAction.build(c5, subset5)


@pytest.fixture(scope="session")
def partition5_quotient(partition5_complex, partition5_action):
    return quotient_complex(partition5_complex, partition5_action)


@pytest.fixture(scope="session")
def subset5_quotient(subset5_complex, subset5_action):
    return quotient_complex(subset5_complex, subset5_action)


@pytest.fixture(scope="session")
def partition5_report(partition5_complex):
    return homology(partition5_complex, ("Z", "Q", "F2", "F5"))


@pytest.fixture(scope="session")
def partition5_quotient_report(partition5_quotient):
    return homology(partition5_quotient, ("Z", "Q", "F2", "F5"))


@pytest.fixture(scope="session")
def subset5_report(subset5_complex):
    return homology(subset5_complex, ("Z", "Q", "F2", "F5"))


@pytest.fixture(scope="session")
def subset5_quotient_report(subset5_quotient):
    return homology(subset5_quotient, ("Z", "Q", "F2", "F5"))
