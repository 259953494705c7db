"""
Element Criticality
Ranks elements by how they take part in minimal cut sets across pairs.
"""

from typing import Dict, Iterable, List

from pydantic import BaseModel, Field

from cutsets.setfamily import SetFamily, iter_ids
from cutsets.topology import Topology


class ElementCriticality(BaseModel):
    """Participation of one element in the cut sets of a topology."""
    element: int = Field(..., description="Element id")
    label: str
    mcs_count: int = Field(0, description="Cut sets containing the element, summed over pairs")
    pair_count: int = Field(0, description="Pairs with at least one cut set containing the element")
    min_order: int = Field(..., description="Smallest cut set size the element occurs in")


def rank_elements(topology: Topology, families: Iterable[SetFamily]) -> List[ElementCriticality]:
    """
    Rank elements by their minimal cut set participation.

    Elements of order 1 (single points of failure) come first; within an
    order, elements appearing in more cut sets rank higher. Elements that
    never occur in a cut set are left out.
    """
    counts: Dict[int, int] = {}
    pairs: Dict[int, int] = {}
    orders: Dict[int, int] = {}

    for family in families:
        seen = set()
        for mask in family.masks:
            size = mask.bit_count()
            for element in iter_ids(mask):
                counts[element] = counts.get(element, 0) + 1
                orders[element] = min(orders.get(element, size), size)
                seen.add(element)
        for element in seen:
            pairs[element] = pairs.get(element, 0) + 1

    ranking = [
        ElementCriticality(
            element=element,
            label=topology.element_label(element),
            mcs_count=counts[element],
            pair_count=pairs[element],
            min_order=orders[element]
        )
        for element in counts
    ]
    ranking.sort(key=lambda c: (c.min_order, -c.mcs_count, c.element))
    return ranking
