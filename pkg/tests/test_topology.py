"""
Unit tests for topology parsing and reachability
"""

import pytest

from cutsets.setfamily import ElementSet
from cutsets.topology import (
    EDGE_LIST,
    JSON,
    PairError,
    TopologyError,
    TopologyParseError,
    is_connected_after_removal,
    load_topology,
    parse_topology,
    serialize_topology,
)
from tests.helpers import DATA_DIR


def test_mesh6_structure(mesh6):
    """Nodes are indexed in label order and edges are sorted index pairs."""
    assert mesh6.nodes == ("A", "B", "C", "D", "E", "F", "S", "T")
    assert mesh6.num_edges == 10
    assert mesh6.edges == tuple(sorted(mesh6.edges))
    assert all(u < v for u, v in mesh6.edges)
    assert mesh6.name == "mesh6"


def test_json_matches_edge_list(mesh6):
    """Both formats describe the same graph."""
    other = load_topology(DATA_DIR / "mesh6.json")

    assert other.nodes == mesh6.nodes
    assert other.edges == mesh6.edges


def test_duplicate_edges_collapse():
    """Repeated edges, in either direction, count once."""
    topology = parse_topology("A B\nB A\nA B\n")

    assert topology.num_edges == 1


def test_comments_and_blank_lines():
    """Comments and blank lines are ignored."""
    topology = parse_topology("# header\n\nA B  # trailing\n   \nB C\n")

    assert topology.nodes == ("A", "B", "C")
    assert topology.num_edges == 2


def test_isolated_node_line():
    """A single label declares an isolated node."""
    topology = parse_topology("A B\nZ\n")

    assert topology.nodes == ("A", "B", "Z")
    assert topology.neighbors("Z") == ()


def test_too_many_tokens_reports_position():
    """Extra tokens are a syntax error with line and column."""
    with pytest.raises(TopologyParseError) as excinfo:
        parse_topology("A B\nA B C\n")

    assert excinfo.value.line == 2
    assert excinfo.value.column == 5


def test_self_loop_rejected():
    """Self-loops are rejected in both formats."""
    with pytest.raises(TopologyParseError):
        parse_topology("A A\n")

    with pytest.raises(TopologyError):
        parse_topology('{"edges": [["A", "A"]]}', format=JSON)


def test_empty_topology_rejected():
    """A file without nodes is an error."""
    with pytest.raises(TopologyError):
        parse_topology("# nothing here\n")


def test_json_errors():
    """Malformed JSON, bad documents and unknown nodes are rejected."""
    with pytest.raises(TopologyParseError) as excinfo:
        parse_topology('{"edges": [["A", "B"]', format=JSON)
    assert excinfo.value.line == 1

    with pytest.raises(TopologyParseError):
        parse_topology('{"edges": [["A"]]}', format=JSON)

    with pytest.raises(TopologyError):
        parse_topology('{"nodes": ["A"], "edges": [["A", "B"]]}', format=JSON)

    with pytest.raises(TopologyError):
        parse_topology('{"nodes": ["A", "A", "B"], "edges": [["A", "B"]]}', format=JSON)


def test_parse_from_bytes():
    """Byte input is decoded."""
    topology = parse_topology(b"A B\n")

    assert topology.nodes == ("A", "B")


@pytest.mark.parametrize("fmt", [EDGE_LIST, JSON])
def test_serialize_then_parse(fmt):
    """Serialization keeps nodes (isolated ones included) and edges."""
    topology = parse_topology("S A\nA T\nS T\nQ\n", name="tri")

    again = parse_topology(serialize_topology(topology, fmt), format=fmt, name="tri")

    assert again == topology


def test_edge_elements(mesh6):
    """Edge element ids follow the node ids."""
    s, a = mesh6.index_of("S"), mesh6.index_of("A")
    element = mesh6.edge_id(s, a)

    assert element >= mesh6.num_nodes
    assert mesh6.is_edge_element(element)
    assert mesh6.element_label(element) == "A--S"
    assert mesh6.element_label(a) == "A"


def test_index_of_errors(mesh6):
    """Unknown labels and out of range ids are pair errors."""
    with pytest.raises(PairError):
        mesh6.index_of("Z")

    with pytest.raises(PairError):
        mesh6.index_of(99)


def test_interior_universe(mesh6):
    """Every node except the endpoints; edges on request."""
    universe = mesh6.interior_universe("S", "T")

    assert mesh6.labels(universe) == ["A", "B", "C", "D", "E", "F"]
    assert len(mesh6.interior_universe("S", "T", include_edges=True)) == 6 + 10


def test_connectivity_after_removal(mesh6):
    """Removing A leaves S-C-D-B-T; removing A and D disconnects."""
    a, c, d = (mesh6.index_of(x) for x in "ACD")

    assert is_connected_after_removal(mesh6, ElementSet.of([a]), "S", "T")
    assert not is_connected_after_removal(mesh6, ElementSet.of([a, d]), "S", "T")
    assert not is_connected_after_removal(mesh6, ElementSet.of([a, c]), "S", "T")


def test_connectivity_edge_removal(two_node):
    """Removing the only edge disconnects the pair."""
    edge = two_node.edge_id(0, 1)

    assert is_connected_after_removal(two_node, ElementSet(), "A", "B")
    assert not is_connected_after_removal(two_node, ElementSet.of([edge]), "A", "B")


def test_removing_endpoint_rejected(mesh6):
    """The endpoints cannot be removed."""
    with pytest.raises(PairError):
        is_connected_after_removal(mesh6, ElementSet.of([mesh6.index_of("S")]), "S", "T")


def test_json_duplicate_edges_collapse():
    """A repeated JSON edge counts once."""
    topology = parse_topology(
        '{"nodes": ["A", "B", "C"], "edges": [["A", "B"], ["B", "C"], ["A", "B"]]}',
        format=JSON
    )

    assert topology.num_nodes == 3
    assert topology.num_edges == 2


def test_connectivity_examples(mesh6):
    """Nothing removed keeps S-T connected, and so does {B, C} through S-A-D-E-F-T."""
    b, c = mesh6.index_of("B"), mesh6.index_of("C")

    assert is_connected_after_removal(mesh6, ElementSet(), "S", "T")
    assert is_connected_after_removal(mesh6, ElementSet.of([b, c]), "S", "T")


def test_removal_is_monotone(mesh6):
    """Once S-T is cut, removing more interior nodes keeps it cut."""
    interior = list(mesh6.interior_universe("S", "T"))
    disconnected = {
        mask
        for mask in range(1 << len(interior))
        if not is_connected_after_removal(
            mesh6, ElementSet.of(e for i, e in enumerate(interior) if mask >> i & 1), "S", "T"
        )
    }

    for mask in disconnected:
        for i in range(len(interior)):
            assert mask | 1 << i in disconnected
