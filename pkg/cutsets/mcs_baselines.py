"""
Baseline Cut Set Engines
Size-by-size combinatorial search over element combinations, and
Boole-Shannon expansion of the monotone success function.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, FrozenSet, List, Optional

import numpy as np
from loguru import logger

from cutsets.budget import StepBudget
from cutsets.mcs_fast import _leaf, _pivot, _split
from cutsets.setfamily import ElementSet, SetFamily, iter_ids, minimize_masks

Masks = FrozenSet[int]


@dataclass(frozen=True)
class SopSuccess:
    """Monotone sum-of-products success function; one product term per path interior."""
    terms: SetFamily


@dataclass(frozen=True)
class ShannonSplit:
    """One expansion step: S = x S_{x=1} + x' S_{x=0}."""
    pivot: int
    positive: SetFamily
    negative: SetFamily
    depth: int


def _hits_all(mask: int, rows: Masks) -> bool:
    for row in rows:
        if not mask & row:
            return False
    return True


def combinatorial_mcs(
    interiors: SetFamily,
    universe: ElementSet,
    budget: Optional[StepBudget] = None,
    prune: bool = True
) -> SetFamily:
    """
    Minimal cut sets by testing element combinations of growing size.

    Rows of the coverage table are the path interiors and columns are
    combinations of universe elements; a combination is a cut set when its
    column (the OR of its elements' columns) is all ones. Supersets of cut
    sets already found are skipped.

    Args:
        interiors: Path interior family
        universe: Candidate elements, a superset of every interior
        budget: Optional step budget (one step per combination)
        prune: Skip supersets of found cut sets; when False every
            combination is checked against the definition instead

    Returns:
        All minimal cut sets in canonical order
    """
    if not interiors.elements().issubset(universe):
        raise ValueError("universe must contain every element of the path interiors")
    if interiors.contains_empty_set():
        return SetFamily(minimal=True)

    columns = universe.ids
    rows = interiors.ordered_masks()
    table = np.array(
        [[bool(row >> element & 1) for element in columns] for row in rows],
        dtype=bool
    ).reshape(len(rows), len(columns))

    found: List[int] = []
    for k in range(len(columns) + 1):
        if 0 in found:
            break
        for combo in combinations(range(len(columns)), k):
            if budget is not None:
                budget.tick()
            mask = 0
            for c in combo:
                mask |= 1 << columns[c]
            if prune:
                if any(f & mask == f for f in found):
                    continue
                if table[:, list(combo)].any(axis=1).all():
                    found.append(mask)
            elif _is_minimal_cut(mask, rows):
                found.append(mask)

    logger.debug(f"combinatorial search: {len(columns)} candidates -> {len(found)} cut sets")
    return SetFamily.from_masks(found, minimal=True)


def _is_minimal_cut(mask: int, rows: Masks) -> bool:
    if not _hits_all(mask, rows):
        return False
    return all(not _hits_all(mask & ~(1 << e), rows) for e in iter_ids(mask))


def _shannon(
    terms: Masks,
    budget: Optional[StepBudget],
    on_split: Optional[Callable[[ShannonSplit], None]],
    depth: int
) -> Masks:
    if 0 in terms:
        return frozenset()
    if not terms:
        return frozenset({0})
    pivot = _pivot(terms)
    if pivot is None:
        return _leaf(terms, budget)

    without, with_reduced = _split(terms, pivot)
    positive = minimize_masks(with_reduced | without)
    negative = without
    if budget is not None:
        budget.tick(len(terms))
    if on_split is not None:
        on_split(ShannonSplit(
            pivot=pivot,
            positive=SetFamily.from_masks(positive, minimal=True),
            negative=SetFamily.from_masks(negative, minimal=True),
            depth=depth
        ))

    cuts_positive = _shannon(positive, budget, on_split, depth + 1)
    cuts_negative = _shannon(negative, budget, on_split, depth + 1)
    bit = 1 << pivot
    return minimize_masks(cuts_positive | {cut | bit for cut in cuts_negative})


def shannon_mcs(
    success: SopSuccess,
    budget: Optional[StepBudget] = None,
    on_split: Optional[Callable[[ShannonSplit], None]] = None
) -> SetFamily:
    """
    Minimal cut sets by recursive Boole-Shannon expansion.

    For the most frequent variable x, S_{x=1} keeps every term with x
    removed and S_{x=0} keeps the terms without x; the cut sets are
    min(MCS(S_{x=1}) | x * MCS(S_{x=0})).

    Args:
        success: Success function (path interiors as product terms)
        budget: Optional step budget
        on_split: Called with every expansion step, outermost first

    Returns:
        All minimal cut sets in canonical order
    """
    result = SetFamily.from_masks(_shannon(success.terms.masks, budget, on_split, 0), minimal=True)
    logger.debug(f"shannon expansion: {len(success.terms)} terms -> {len(result)} cut sets")
    return result
