"""
Decision-Tree Cut Set Engine
Computes minimal cut sets from minimal path interiors by splitting the
clause family on its most frequent element, evaluating leaves as products
and combining both branches with absorption at every step.
"""

from collections import Counter
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from loguru import logger

from cutsets.budget import StepBudget
from cutsets.setfamily import (
    AbsorbList,
    SetFamily,
    cross_union_masks,
    iter_ids,
    minimize_masks,
)

Masks = FrozenSet[int]


def _split(masks: Masks, x: int) -> Tuple[Masks, Masks]:
    bit = 1 << x
    without = []
    with_reduced = []
    for clause in masks:
        if clause & bit:
            with_reduced.append(clause & ~bit)
        else:
            without.append(clause)
    return frozenset(without), frozenset(with_reduced)


def _pivot(masks: Masks) -> Optional[int]:
    counts: Counter = Counter()
    for clause in masks:
        counts.update(iter_ids(clause))
    if not counts:
        return None
    best = max(counts.values())
    if best < 2:
        return None
    return min(element for element, count in counts.items() if count == best)


def _leaf(masks: Masks, budget: Optional[StepBudget] = None) -> Masks:
    if 0 in masks:
        return frozenset()
    hitting = AbsorbList([0])
    for clause in sorted(masks):
        current = hitting.masks()
        hitting = AbsorbList()
        if budget is not None:
            budget.tick(len(current))
        for partial in current:
            if partial & clause:
                hitting.add(partial)
                continue
            for element in iter_ids(clause):
                hitting.add(partial | 1 << element)
    return hitting.masks()


def _combine(left: Masks, right: Masks, x: int, budget: Optional[StepBudget] = None) -> Masks:
    right_with_pivot = minimize_masks(right | {1 << x})
    return cross_union_masks(left, right_with_pivot, budget)


def split(family: SetFamily, x: int) -> Tuple[SetFamily, SetFamily]:
    """
    Partition clauses on element x.

    Returns:
        (clauses without x, clauses with x and x removed)
    """
    without, with_reduced = _split(family.masks, x)
    return (
        SetFamily.from_masks(without, minimal=family.minimal),
        SetFamily.from_masks(with_reduced, minimal=family.minimal)
    )


def pick_pivot(family: SetFamily) -> Optional[int]:
    """Most frequent element if it occurs in two or more clauses; ties go to the smallest id."""
    return _pivot(family.masks)


def evaluate_leaf(family: SetFamily, budget: Optional[StepBudget] = None) -> SetFamily:
    """Minimal hitting sets of pairwise-disjoint clauses: one element per clause."""
    return SetFamily.from_masks(_leaf(family.masks, budget), minimal=True)


def combine(left_hs: SetFamily, right_hs: SetFamily, x: int, budget: Optional[StepBudget] = None) -> SetFamily:
    """
    Join the hitting sets of both branches of a split on x.

    The clauses factor as Without AND (x OR WithReduced), hence the result is
    cross_union(left_hs, minimize({{x}} | right_hs)).
    """
    return SetFamily.from_masks(_combine(left_hs.masks, right_hs.masks, x, budget), minimal=True)


@dataclass
class DecisionNode:
    """Node of the materialized decision tree."""
    clauses: SetFamily
    pivot: Optional[int] = None
    left: Optional["DecisionNode"] = None
    right: Optional["DecisionNode"] = None
    evaluation: Optional[SetFamily] = None

    @property
    def is_leaf(self) -> bool:
        return self.pivot is None

    def check_partition(self) -> bool:
        """Structural invariants at this node and below."""
        if self.is_leaf:
            return self.left is None and self.right is None and _pivot(self.clauses.masks) is None
        if self.left is None or self.right is None:
            return False
        bit = 1 << self.pivot
        occurrences = sum(1 for clause in self.clauses.masks if clause & bit)
        rebuilt = self.left.clauses.masks | {clause | bit for clause in self.right.clauses.masks}
        return (
            occurrences >= 2
            and rebuilt == self.clauses.masks
            and self.left.check_partition()
            and self.right.check_partition()
        )

    def count_nodes(self) -> int:
        if self.is_leaf:
            return 1
        return 1 + self.left.count_nodes() + self.right.count_nodes()


def build_tree(family: SetFamily) -> DecisionNode:
    """Materialize the decision tree for a clause family."""
    node = DecisionNode(clauses=family)
    pivot = _pivot(family.masks)
    if pivot is not None:
        without, with_reduced = split(family, pivot)
        node.pivot = pivot
        node.left = build_tree(without)
        node.right = build_tree(with_reduced)
    return node


def evaluate_tree(node: DecisionNode, budget: Optional[StepBudget] = None) -> SetFamily:
    """Evaluate a materialized tree bottom-up, storing each node's hitting sets."""
    if node.is_leaf:
        node.evaluation = evaluate_leaf(node.clauses, budget)
    else:
        left = evaluate_tree(node.left, budget)
        right = evaluate_tree(node.right, budget)
        node.evaluation = combine(left, right, node.pivot, budget)
    return node.evaluation


def _evaluate(masks: Masks, budget: Optional[StepBudget]) -> Masks:
    pivot = _pivot(masks)
    if pivot is None:
        return _leaf(masks, budget)
    without, with_reduced = _split(masks, pivot)
    left = _evaluate(without, budget)
    right = _evaluate(with_reduced, budget)
    return _combine(left, right, pivot, budget)


def fast_mcs(interiors: SetFamily, budget: Optional[StepBudget] = None) -> SetFamily:
    """
    Minimal cut sets of a pair from its minimal path interiors.

    Builds and evaluates the decision tree in one recursive pass.
    interiors = {∅} (direct edge) gives the empty family; the empty
    family (disconnected pair) gives {∅}.
    """
    result = SetFamily.from_masks(_evaluate(interiors.masks, budget), minimal=True)
    logger.debug(f"decision tree: {len(interiors)} path sets -> {len(result)} cut sets")
    return result
