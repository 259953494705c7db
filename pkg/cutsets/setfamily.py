"""
Set Family Algebra
Element sets, antichain families with absorption, and the product operators
shared by every cut set engine.

Element sets are bitmasks over dense integer element ids: bit i set means
element i is present. Nodes occupy ids 0..|V|-1 and edges follow, so the
integer order is also the nodes-before-edges order.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Set, Tuple, Union

from cutsets.budget import StepBudget


def iter_ids(mask: int) -> Iterator[int]:
    """Yield the element ids of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for element in ids:
        if element < 0:
            raise ValueError(f"element ids must be non-negative, got {element}")
        mask |= 1 << element
    return mask


def mask_sort_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    """Canonical order: cardinality first, then lexicographic on sorted ids."""
    return (mask.bit_count(), tuple(iter_ids(mask)))


@dataclass(frozen=True, slots=True)
class ElementSet:
    """Immutable, canonical set of element ids."""

    mask: int = 0

    @classmethod
    def of(cls, ids: Iterable[int]) -> "ElementSet":
        return cls(mask_of(ids))

    @property
    def ids(self) -> Tuple[int, ...]:
        return tuple(iter_ids(self.mask))

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return mask_sort_key(self.mask)

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & other.mask == self.mask

    def issuperset(self, other: "ElementSet") -> bool:
        return other.mask & self.mask == other.mask

    def union(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask | other.mask)

    def without(self, element: int) -> "ElementSet":
        return ElementSet(self.mask & ~(1 << element))

    def intersects(self, other: "ElementSet") -> bool:
        return bool(self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return self.union(other)

    def __le__(self, other: "ElementSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "ElementSet") -> bool:
        return self.mask != other.mask and self.issubset(other)

    def __contains__(self, element: int) -> bool:
        return bool(self.mask >> element & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_ids(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __repr__(self) -> str:
        return "{" + ",".join(str(i) for i in self.ids) + "}"


SetLike = Union[ElementSet, int]


def _as_mask(value: SetLike) -> int:
    return value.mask if isinstance(value, ElementSet) else int(value)


class SetFamily:
    """
    Immutable collection of distinct element sets.

    `minimal` records that the family is maintained as an antichain. Equality
    is structural on the members; the flag does not take part in it.
    """

    __slots__ = ("_masks", "minimal", "_ordered")

    def __init__(self, sets: Iterable[SetLike] = (), minimal: bool = False):
        self._masks = frozenset(_as_mask(s) for s in sets)
        self.minimal = minimal
        self._ordered: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_masks(cls, masks: Iterable[int], minimal: bool = False) -> "SetFamily":
        family = cls.__new__(cls)
        family._masks = masks if isinstance(masks, frozenset) else frozenset(masks)
        family.minimal = minimal
        family._ordered = None
        return family

    @property
    def masks(self) -> frozenset:
        return self._masks

    def ordered_masks(self) -> Tuple[int, ...]:
        if self._ordered is None:
            self._ordered = tuple(sorted(self._masks, key=mask_sort_key))
        return self._ordered

    def members(self) -> List[ElementSet]:
        """Members in canonical order."""
        return [ElementSet(m) for m in self.ordered_masks()]

    def elements(self) -> ElementSet:
        """Union of all members."""
        union = 0
        for mask in self._masks:
            union |= mask
        return ElementSet(union)

    def contains_empty_set(self) -> bool:
        return 0 in self._masks

    def is_antichain(self) -> bool:
        """Pairwise check that no member is a proper subset of another."""
        ordered = self.ordered_masks()
        for i, small in enumerate(ordered):
            for large in ordered[i + 1:]:
                if small & large == small:
                    return False
        return True

    def to_labels(self, label: Callable[[int], str]) -> List[List[str]]:
        """Canonical JSON form: array of arrays of element labels."""
        return [[label(i) for i in iter_ids(m)] for m in self.ordered_masks()]

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.members())

    def __len__(self) -> int:
        return len(self._masks)

    def __bool__(self) -> bool:
        return bool(self._masks)

    def __contains__(self, item: SetLike) -> bool:
        return _as_mask(item) in self._masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self._masks == other._masks

    def __hash__(self) -> int:
        return hash(self._masks)

    def __repr__(self) -> str:
        return "SetFamily([" + ", ".join(repr(ElementSet(m)) for m in self.ordered_masks()) + "])"


EMPTY_FAMILY = SetFamily(minimal=True)
UNIT_FAMILY = SetFamily([0], minimal=True)


class AbsorbList:
    """
    Single-owner builder that keeps its content an antichain.

    Members are bucketed by cardinality so that a subset can only be found
    among smaller buckets and a superset only among larger ones.
    """

    def __init__(self, masks: Iterable[int] = ()):
        self._buckets: Dict[int, Set[int]] = {}
        self._size = 0
        for mask in masks:
            self.add(mask)

    def add(self, mask: int) -> bool:
        """absorb_insert on masks; returns True when the set was inserted."""
        k = mask.bit_count()
        buckets = self._buckets
        same = buckets.get(k)
        if same is not None and mask in same:
            return False
        for j, bucket in buckets.items():
            if j < k:
                for member in bucket:
                    if member & mask == member:
                        return False
        for j, bucket in buckets.items():
            if j > k:
                absorbed = [member for member in bucket if member & mask == mask]
                if absorbed:
                    bucket.difference_update(absorbed)
                    self._size -= len(absorbed)
        if same is None:
            same = buckets[k] = set()
        same.add(mask)
        self._size += 1
        return True

    def masks(self) -> frozenset:
        return frozenset(m for bucket in self._buckets.values() for m in bucket)

    def freeze(self) -> SetFamily:
        return SetFamily.from_masks(self.masks(), minimal=True)

    def __len__(self) -> int:
        return self._size


def minimize_masks(masks: Iterable[int]) -> frozenset:
    """The subset-minimal members of a collection of masks."""
    kept: List[int] = []
    for mask in sorted(set(masks), key=int.bit_count):
        for small in kept:
            if small & mask == small:
                break
        else:
            kept.append(mask)
    return frozenset(kept)


def absorb_insert(family: SetFamily, element_set: SetLike) -> SetFamily:
    """Insert a set into an antichain, keeping only subset-minimal members."""
    mask = _as_mask(element_set)
    masks = family.masks
    for member in masks:
        if member & mask == member:
            return family if family.minimal else SetFamily.from_masks(masks, minimal=True)
    kept = [member for member in masks if member & mask != mask]
    kept.append(mask)
    return SetFamily.from_masks(kept, minimal=True)


def minimize(family: SetFamily) -> SetFamily:
    """Antichain of the subset-minimal members of the family."""
    return SetFamily.from_masks(minimize_masks(family.masks), minimal=True)


def cross_union_masks(
    a: Iterable[int],
    b: Iterable[int],
    budget: Optional[StepBudget] = None
) -> frozenset:
    """minimize({x | y : x in a, y in b}) on masks."""
    a = frozenset(a)
    b = frozenset(b)
    if not a or not b:
        return frozenset()
    if a == {0}:
        return minimize_masks(b)
    if b == {0}:
        return minimize_masks(a)
    if len(a) < len(b):
        a, b = b, a
    inner = tuple(b)
    result = AbsorbList()
    for x in a:
        if budget is not None:
            budget.tick(len(inner))
        for y in inner:
            result.add(x | y)
    return result.masks()


def cross_union(a: SetFamily, b: SetFamily, budget: Optional[StepBudget] = None) -> SetFamily:
    """
    Pairwise unions of two families, minimized.

    {∅} is the identity and the empty family the annihilator.
    """
    return SetFamily.from_masks(cross_union_masks(a.masks, b.masks, budget), minimal=True)


def family_of(*sets: Iterable[int], minimal: bool = False) -> SetFamily:
    """Build a family from iterables of element ids."""
    return SetFamily((mask_of(s) for s in sets), minimal=minimal)
