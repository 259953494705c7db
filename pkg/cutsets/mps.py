"""
Minimal Path Set Enumeration
Pruned depth-first search over chordless source-destination paths, and an
exhaustive oracle for testing it.
"""

from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx
from loguru import logger

from cutsets.setfamily import SetFamily, minimize_masks
from cutsets.topology import NodeRef, PairError, Topology


@dataclass(frozen=True)
class MpsResult:
    """Minimal path sets of one source-destination pair."""
    src: int
    dst: int
    paths: Tuple[Tuple[int, ...], ...]
    interiors: SetFamily
    include_edges: bool = False

    def labelled_paths(self, topology: Topology) -> List[List[str]]:
        return [[topology.nodes[i] for i in path] for path in self.paths]

    def __len__(self) -> int:
        return len(self.paths)


def _resolve_pair(topology: Topology, src: NodeRef, dst: NodeRef) -> Tuple[int, int]:
    s, d = topology.index_of(src), topology.index_of(dst)
    if s == d:
        raise PairError(f"source and destination must differ (got '{topology.nodes[s]}' twice)")
    return s, d


def _interior_mask(topology: Topology, path: Tuple[int, ...], include_edges: bool) -> int:
    mask = 0
    for node in path[1:-1]:
        mask |= 1 << node
    if include_edges:
        for u, v in zip(path, path[1:]):
            mask |= 1 << topology.edge_id(u, v)
    return mask


def find_mps(
    topology: Topology,
    src: NodeRef,
    dst: NodeRef,
    include_edges: bool = False,
    validate: bool = False
) -> MpsResult:
    """
    Enumerate the minimal path sets between src and dst.

    The search extends a path only with a neighbor of its last node that is
    neither on the path nor adjacent to any earlier path node, so every path
    it reports is chordless. Neighbors are visited in ascending index order.

    Args:
        topology: Graph to search
        src: Source node (label or index)
        dst: Destination node (label or index)
        include_edges: Add each path's edge elements to its interior set
        validate: Check that the interior family is an antichain

    Returns:
        MpsResult with paths in discovery order and the interior family
    """
    s, d = _resolve_pair(topology, src, dst)
    adjacency = topology.adjacency
    adj_mask = topology.adjacency_masks

    paths: List[Tuple[int, ...]] = []
    path = [s]
    # reach[k]: neighbors of path[0..k-1], i.e. of every node before path[k]
    reach = [0]
    path_mask = 1 << s
    stack = [iter(adjacency[s])]

    while stack:
        current = path[-1]
        blocked = reach[-1] | path_mask
        for neighbor in stack[-1]:
            if blocked >> neighbor & 1:
                continue
            if neighbor == d:
                paths.append(tuple(path) + (d,))
                continue
            path.append(neighbor)
            path_mask |= 1 << neighbor
            reach.append(reach[-1] | adj_mask[current])
            stack.append(iter(adjacency[neighbor]))
            break
        else:
            stack.pop()
            reach.pop()
            path_mask &= ~(1 << path.pop())

    interiors = SetFamily(
        (_interior_mask(topology, p, include_edges) for p in paths),
        minimal=True
    )
    if validate and not interiors.is_antichain():
        raise AssertionError("minimal path interiors are not an antichain")

    logger.debug(
        f"{topology.name}: {len(paths)} minimal paths "
        f"{topology.nodes[s]} -> {topology.nodes[d]}"
    )
    return MpsResult(src=s, dst=d, paths=tuple(paths), interiors=interiors, include_edges=include_edges)


def mps_oracle(topology: Topology, src: NodeRef, dst: NodeRef) -> SetFamily:
    """
    Minimal path interiors from every simple path (exponential; small graphs).
    """
    s, d = _resolve_pair(topology, src, dst)
    interiors = (
        sum(1 << node for node in path[1:-1])
        for path in nx.all_simple_paths(topology.graph, s, d)
    )
    return SetFamily.from_masks(minimize_masks(interiors), minimal=True)
