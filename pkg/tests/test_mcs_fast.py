"""
Unit tests for the decision-tree cut set engine
"""

import pytest

from cutsets.budget import BudgetExceeded, StepBudget
from cutsets.mcs_fast import (
    build_tree,
    combine,
    evaluate_leaf,
    evaluate_tree,
    fast_mcs,
    pick_pivot,
    split,
)
from cutsets.mps import find_mps
from cutsets.setfamily import EMPTY_FAMILY, UNIT_FAMILY, SetFamily, family_of
from tests.helpers import MESH_MCS, family, labels, random_topologies


def test_mesh6_cut_sets(mesh6):
    """The five S-T cut sets, as an antichain."""
    interiors = find_mps(mesh6, "S", "T").interiors

    result = fast_mcs(interiors)

    assert labels(mesh6, result) == MESH_MCS
    assert result.is_antichain()


def test_pivot_most_frequent(mesh6):
    """D occurs in three path sets."""
    interiors = find_mps(mesh6, "S", "T").interiors

    assert pick_pivot(interiors) == mesh6.index_of("D")


def test_pivot_tie_and_none():
    """Ties go to the smallest id; no pivot when every count is one."""
    assert pick_pivot(family_of([0, 1], [1, 2], [2, 3], [0, 3])) == 0
    assert pick_pivot(family_of([0, 1], [2, 3])) is None
    assert pick_pivot(EMPTY_FAMILY) is None


def test_split_partition(mesh6):
    """Splitting on D leaves {A,B} on the left."""
    interiors = find_mps(mesh6, "S", "T").interiors
    d = mesh6.index_of("D")

    without, with_reduced = split(interiors, d)

    assert without == family(mesh6, "AB")
    assert with_reduced == family(mesh6, "CB", "AEF", "CEF")


def test_evaluate_leaf():
    """Disjoint clauses: one element from each."""
    leaf = family_of([0, 1], [2])

    assert evaluate_leaf(leaf) == family_of([0, 2], [1, 2])
    assert evaluate_leaf(EMPTY_FAMILY) == UNIT_FAMILY
    assert evaluate_leaf(UNIT_FAMILY) == EMPTY_FAMILY


def test_combine_adds_pivot():
    """Clauses {x,a} and {b}: hitting sets {b,x} and {a,b}."""
    left = family_of([1])
    right = family_of([2])

    assert combine(left, right, 0) == family_of([0, 1], [1, 2])


def test_degenerate_inputs():
    """Direct edge gives no cut set, a disconnected pair the empty cut."""
    assert fast_mcs(UNIT_FAMILY) == EMPTY_FAMILY
    assert fast_mcs(EMPTY_FAMILY) == UNIT_FAMILY


def test_tree_partition_and_evaluation(mesh6):
    """D at the root; the evaluated tree matches the recursive engine."""
    interiors = find_mps(mesh6, "S", "T").interiors

    tree = build_tree(interiors)

    assert tree.pivot == mesh6.index_of("D")
    assert tree.check_partition()
    assert tree.count_nodes() >= 3
    assert labels(mesh6, evaluate_tree(tree)) == MESH_MCS
    assert tree.evaluation == fast_mcs(interiors)


def test_leaf_tree():
    """Disjoint clauses make a single leaf."""
    tree = build_tree(family_of([0], [1, 2]))

    assert tree.is_leaf
    assert tree.check_partition()
    assert evaluate_tree(tree) == family_of([0, 1], [0, 2])


def test_budget_interrupts():
    """A large product exceeds a small step budget."""
    clauses = SetFamily.from_masks([0b11 << (2 * i) for i in range(16)])

    with pytest.raises(BudgetExceeded):
        fast_mcs(clauses, StepBudget(max_steps=1000))


def test_combine_reproduces_mesh_answer(mesh6):
    """The inner combine on C feeds the outer combine on D, which yields the five cut sets."""
    c, d = mesh6.index_of("C"), mesh6.index_of("D")

    inner = combine(family(mesh6, "A", "E", "F"), family(mesh6, "BE", "BF"), c)
    assert inner == family(mesh6, "AC", "CE", "CF", "BE", "BF")

    outer = combine(family(mesh6, "A", "B"), inner, d)
    assert labels(mesh6, outer) == MESH_MCS


def test_combine_degenerate_branches():
    """No without-clauses keeps {x} beside the right side; an unsatisfiable right side adds x to the left."""
    assert combine(UNIT_FAMILY, family_of([0]), 1) == family_of([1], [0])
    assert combine(family_of([2], [3]), EMPTY_FAMILY, 0) == family_of([0, 2], [0, 3])


def test_small_examples():
    """A single path set, and two overlapping ones sharing B."""
    assert fast_mcs(family_of([7])) == family_of([7])
    assert fast_mcs(family_of([0, 1], [1, 2])) == family_of([1], [0, 2])


def test_tree_partition_on_random_graphs():
    """Every materialized tree satisfies the partition invariants and evaluates like fast_mcs."""
    for topology in random_topologies(40, max_nodes=9, seed=6, max_p=0.45):
        for s, d in topology.pairs():
            interiors = find_mps(topology, s, d).interiors
            tree = build_tree(interiors)

            assert tree.check_partition(), topology.name
            assert evaluate_tree(tree) == fast_mcs(interiors), topology.name
