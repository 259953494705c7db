"""
Unit tests for minimal path set enumeration
"""

import pytest

from cutsets.mps import find_mps, mps_oracle
from cutsets.setfamily import UNIT_FAMILY, ElementSet
from cutsets.topology import PairError, is_connected_after_removal, parse_topology
from tests.helpers import family, random_topologies


def test_mesh6_paths(mesh6):
    """Four chordless paths, S-A-D-B-T is not one of them."""
    result = find_mps(mesh6, "S", "T")
    paths = sorted(result.labelled_paths(mesh6))

    assert paths == sorted([
        ["S", "A", "B", "T"],
        ["S", "C", "D", "B", "T"],
        ["S", "A", "D", "E", "F", "T"],
        ["S", "C", "D", "E", "F", "T"],
    ])
    assert result.interiors == family(mesh6, "AB", "CDB", "ADEF", "CDEF")
    assert len(result) == 4


def test_paths_are_chordless(mesh6):
    """No two non-consecutive nodes of a reported path are adjacent."""
    result = find_mps(mesh6, "S", "T")
    for path in result.paths:
        for i, u in enumerate(path):
            for v in path[i + 2:]:
                assert v not in mesh6.adjacency[u]


def test_direct_edge(two_node):
    """A direct edge gives the single path with an empty interior."""
    result = find_mps(two_node, "A", "B")

    assert result.labelled_paths(two_node) == [["A", "B"]]
    assert result.interiors.contains_empty_set()
    assert len(result.interiors) == 1


def test_chord_prunes_longer_path(diamond):
    """S-A-B-T has the chord S-B, so only the two short paths remain."""
    result = find_mps(diamond, "S", "T")

    assert result.interiors == family(diamond, "A", "B")


def test_disconnected_pair(split_graph):
    """No path, no interiors."""
    result = find_mps(split_graph, "A", "C")

    assert len(result) == 0
    assert not result.interiors


def test_same_endpoint_rejected(mesh6):
    """Source and destination must differ."""
    with pytest.raises(PairError):
        find_mps(mesh6, "S", "S")


def test_unknown_node_rejected(mesh6):
    """Unknown labels are pair errors."""
    with pytest.raises(PairError):
        find_mps(mesh6, "S", "Z")


def test_discovery_order(mesh6):
    """Neighbors are explored in ascending index order."""
    result = find_mps(mesh6, "S", "T")

    assert result.labelled_paths(mesh6)[0] == ["S", "A", "B", "T"]


def test_edges_in_interiors():
    """With edges included, each interior also holds the path's edges."""
    topology = parse_topology("S A\nA T\n")
    result = find_mps(topology, "S", "T", include_edges=True)

    (interior,) = result.interiors.members()
    assert topology.labels(interior) == ["A", "A--S", "A--T"]


def test_validate_flag(mesh6):
    """The validated result is an antichain."""
    result = find_mps(mesh6, "S", "T", validate=True)

    assert result.interiors.is_antichain()


def test_matches_oracle_on_random_graphs():
    """The pruned search finds exactly the minimal path interiors."""
    for topology in random_topologies(200, max_nodes=10, seed=1, max_p=0.45):
        for s, d in topology.pairs():
            assert find_mps(topology, s, d).interiors == mps_oracle(topology, s, d), (
                f"{topology.name}: {topology.nodes[s]}-{topology.nodes[d]}"
            )


def test_oracle_complete_graph():
    """In K4 every pair is adjacent, so the direct edge absorbs every longer path."""
    topology = parse_topology("A B\nA C\nA D\nB C\nB D\nC D\n", name="k4")

    for s, d in topology.pairs():
        assert mps_oracle(topology, s, d) == UNIT_FAMILY
        assert find_mps(topology, s, d).interiors == UNIT_FAMILY


def test_oracle_mesh6(mesh6):
    """The exhaustive search finds the same four interiors."""
    assert mps_oracle(mesh6, "S", "T") == find_mps(mesh6, "S", "T").interiors


def test_paths_connect_the_pair():
    """Removing everything outside a reported path leaves the pair connected."""
    for topology in random_topologies(30, max_nodes=9, seed=10, max_p=0.45):
        everything = (1 << topology.num_nodes) - 1
        for s, d in topology.pairs():
            for path in find_mps(topology, s, d).paths:
                outside = everything & ~sum(1 << node for node in path)
                assert is_connected_after_removal(topology, ElementSet(outside), s, d), topology.name
