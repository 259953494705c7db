"""
Unit tests for element criticality ranking
"""

from cutsets.criticality import rank_elements
from cutsets.mcs_fast import fast_mcs
from cutsets.mps import find_mps
from cutsets.topology import parse_topology


def test_mesh6_ranking(mesh6):
    """B and D appear in the most S-T cut sets."""
    families = [fast_mcs(find_mps(mesh6, "S", "T").interiors)]

    ranking = rank_elements(mesh6, families)

    assert [c.label for c in ranking] == ["B", "A", "D", "C", "E", "F"]
    assert ranking[0].mcs_count == 3
    assert all(c.min_order == 2 and c.pair_count == 1 for c in ranking)


def test_single_point_of_failure_first():
    """The articulation node ranks first with order 1."""
    topology = parse_topology("S H\nH A\nH B\nA T\nB T\n")
    families = [fast_mcs(find_mps(topology, "S", "T").interiors)]

    ranking = rank_elements(topology, families)

    assert ranking[0].label == "H"
    assert ranking[0].min_order == 1


def test_counts_over_pairs(mesh6):
    """A counts once for each pair it helps cut."""
    pairs = [("S", "T"), ("S", "B")]
    families = [fast_mcs(find_mps(mesh6, s, d).interiors) for s, d in pairs]

    ranking = {c.label: c for c in rank_elements(mesh6, families)}

    assert ranking["A"].pair_count == 2


def test_empty_input(mesh6):
    """No families, no ranking."""
    assert rank_elements(mesh6, []) == []
