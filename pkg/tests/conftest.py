import pytest

from cutsets.topology import Topology, load_topology, parse_topology

from tests.helpers import DATA_DIR


@pytest.fixture
def mesh6() -> Topology:
    return load_topology(DATA_DIR / "mesh6.txt")


@pytest.fixture
def two_node() -> Topology:
    return load_topology(DATA_DIR / "two_node.txt")


@pytest.fixture
def split_graph() -> Topology:
    """Two components: A-B and C-D."""
    return parse_topology("A B\nC D\n", name="split")


@pytest.fixture
def diamond() -> Topology:
    """S-A-T and S-B-T with a chord A-B."""
    return parse_topology("S A\nS B\nA T\nB T\nA B\n", name="diamond")
