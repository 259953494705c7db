"""
Topology
Parsing, validation and serialization of undirected network topologies,
plus the reachability check used to verify cut sets.
"""

import io
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import BinaryIO, Dict, Iterable, List, Optional, TextIO, Tuple, Union

import networkx as nx
from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from cutsets.setfamily import ElementSet, iter_ids

EDGE_LIST = "edge-list"
JSON = "json"
FORMATS = (EDGE_LIST, JSON)

NodeRef = Union[str, int]


class TopologyError(ValueError):
    """Topology violates a structural rule (self-loop, unknown node, empty graph)."""


class TopologyParseError(TopologyError):
    """Syntax error in a topology document."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PairError(ValueError):
    """Invalid source/destination pair."""


class TopologyDocument(BaseModel):
    """JSON topology document."""
    nodes: Optional[List[str]] = Field(None, description="Node labels; inferred from edges when absent")
    edges: List[Tuple[str, str]] = Field(..., description="Undirected edges as label pairs")


@dataclass(frozen=True)
class Topology:
    """
    Immutable undirected graph.

    Nodes are stored in label sort order and addressed by their dense index.
    Edges are index pairs (u, v) with u < v, sorted; edge element ids follow
    the node ids: edge j has element id |V| + j.
    """

    name: str
    nodes: Tuple[str, ...]
    edges: Tuple[Tuple[int, int], ...]
    adjacency: Tuple[Tuple[int, ...], ...] = field(compare=False, repr=False)

    @classmethod
    def build(cls, name: str, nodes: Iterable[str], edges: Iterable[Tuple[str, str]]) -> "Topology":
        """
        Validate and index a graph given by labels.

        Duplicate edges collapse to one; self-loops, unknown endpoints and
        empty graphs are rejected.
        """
        labels = sorted(set(nodes))
        if not labels:
            raise TopologyError("topology has no nodes")
        index = {label: i for i, label in enumerate(labels)}

        pairs = set()
        for u, v in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise TopologyError(f"edge ({u}, {v}) references unknown node '{missing}'")
            if u == v:
                raise TopologyError(f"self-loop on node '{u}' is not allowed")
            a, b = index[u], index[v]
            pairs.add((a, b) if a < b else (b, a))

        neighbors: List[List[int]] = [[] for _ in labels]
        for a, b in pairs:
            neighbors[a].append(b)
            neighbors[b].append(a)

        return cls(
            name=name,
            nodes=tuple(labels),
            edges=tuple(sorted(pairs)),
            adjacency=tuple(tuple(sorted(n)) for n in neighbors)
        )

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def _node_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.nodes)}

    @cached_property
    def _edge_index(self) -> Dict[Tuple[int, int], int]:
        return {pair: j for j, pair in enumerate(self.edges)}

    @cached_property
    def adjacency_masks(self) -> Tuple[int, ...]:
        """Neighbor sets as bitmasks over node indices."""
        return tuple(sum(1 << n for n in row) for row in self.adjacency)

    @cached_property
    def graph(self) -> nx.Graph:
        """networkx view over node indices (used by the oracles)."""
        g = nx.Graph()
        g.add_nodes_from(range(self.num_nodes))
        g.add_edges_from(self.edges)
        return g

    def index_of(self, node: NodeRef) -> int:
        """Resolve a node label (or index) to its index."""
        if isinstance(node, int):
            if 0 <= node < self.num_nodes:
                return node
            raise PairError(f"node index {node} out of range")
        try:
            return self._node_index[node]
        except KeyError:
            raise PairError(f"unknown node '{node}' in topology '{self.name}'") from None

    def edge_id(self, u: int, v: int) -> int:
        """Element id of the edge between node indices u and v."""
        pair = (u, v) if u < v else (v, u)
        return self.num_nodes + self._edge_index[pair]

    def is_edge_element(self, element: int) -> bool:
        return element >= self.num_nodes

    def element_label(self, element: int) -> str:
        if element < self.num_nodes:
            return self.nodes[element]
        u, v = self.edges[element - self.num_nodes]
        return f"{self.nodes[u]}--{self.nodes[v]}"

    def labels(self, element_set: ElementSet) -> List[str]:
        return [self.element_label(i) for i in element_set]

    def neighbors(self, node: NodeRef) -> Tuple[int, ...]:
        return self.adjacency[self.index_of(node)]

    def pairs(self) -> List[Tuple[int, int]]:
        """All unordered node pairs (u, v), u < v, in canonical order."""
        n = self.num_nodes
        return [(u, v) for u in range(n) for v in range(u + 1, n)]

    def interior_universe(self, src: NodeRef, dst: NodeRef, include_edges: bool = False) -> ElementSet:
        """Every element that may appear in a cut set of the pair."""
        s, d = self.index_of(src), self.index_of(dst)
        mask = ((1 << self.num_nodes) - 1) & ~(1 << s) & ~(1 << d)
        if include_edges:
            mask |= ((1 << self.num_edges) - 1) << self.num_nodes
        return ElementSet(mask)


def _read_text(source: Union[bytes, str, BinaryIO, TextIO]) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _parse_edge_list(text: str, name: str) -> Topology:
    nodes: List[str] = []
    edges: List[Tuple[str, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) > 2:
            column = raw.find(tokens[2]) + 1
            raise TopologyParseError(
                f"expected '<label> <label>', found {len(tokens)} tokens",
                line_no,
                column
            )
        nodes.extend(tokens)
        if len(tokens) == 2:
            u, v = tokens
            if u == v:
                raise TopologyParseError(f"self-loop on node '{u}' is not allowed", line_no, raw.find(u) + 1)
            edges.append((u, v))
    return Topology.build(name, nodes, edges)


def _parse_json(text: str, name: str) -> Topology:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise TopologyParseError(e.msg, e.lineno, e.colno) from e

    try:
        document = TopologyDocument.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(p) for p in first["loc"])
        raise TopologyParseError(f"{location}: {first['msg']}", 1) from e

    if document.nodes is None:
        nodes = [label for edge in document.edges for label in edge]
    else:
        if len(set(document.nodes)) != len(document.nodes):
            raise TopologyError("duplicate node labels in 'nodes'")
        nodes = document.nodes
    return Topology.build(name, nodes, document.edges)


def parse_topology(
    source: Union[bytes, str, BinaryIO, TextIO],
    format: str = EDGE_LIST,
    name: str = "topology"
) -> Topology:
    """
    Parse a topology document.

    Args:
        source: Document bytes, text, or a readable stream
        format: 'edge-list' or 'json'
        name: Topology name

    Returns:
        Validated Topology
    """
    text = _read_text(source)
    if format == EDGE_LIST:
        topology = _parse_edge_list(text, name)
    elif format == JSON:
        topology = _parse_json(text, name)
    else:
        raise ValueError(f"Unknown topology format: {format}")

    logger.debug(f"Parsed topology '{name}': |V|={topology.num_nodes}, |E|={topology.num_edges}")
    return topology


def load_topology(path: Union[str, Path], format: Optional[str] = None) -> Topology:
    """Load a topology file; format inferred from the suffix when not given."""
    path = Path(path)
    if format is None:
        format = JSON if path.suffix.lower() == ".json" else EDGE_LIST
    with open(path, "rb") as f:
        return parse_topology(f, format=format, name=path.stem)


def serialize_topology(topology: Topology, format: str = EDGE_LIST) -> str:
    """Serialize so that parse_topology gives back an equal Topology."""
    labels = topology.nodes
    if format == JSON:
        document = {
            "name": topology.name,
            "nodes": list(labels),
            "edges": [[labels[u], labels[v]] for u, v in topology.edges]
        }
        return json.dumps(document, indent=2) + "\n"
    if format != EDGE_LIST:
        raise ValueError(f"Unknown topology format: {format}")

    out = io.StringIO()
    connected = set()
    for u, v in topology.edges:
        out.write(f"{labels[u]} {labels[v]}\n")
        connected.update((u, v))
    for i, label in enumerate(labels):
        if i not in connected:
            out.write(f"{label}\n")
    return out.getvalue()


def is_connected_after_removal(
    topology: Topology,
    removed: ElementSet,
    src: NodeRef,
    dst: NodeRef
) -> bool:
    """
    True iff src still reaches dst once the removed elements have failed.

    Node ids in `removed` delete nodes, edge ids delete edges.
    """
    s, d = topology.index_of(src), topology.index_of(dst)
    if s in removed or d in removed:
        raise PairError("source and destination cannot be part of the removed set")

    n = topology.num_nodes
    hidden_nodes = [i for i in iter_ids(removed.mask) if i < n]
    hidden_edges = [topology.edges[i - n] for i in iter_ids(removed.mask) if i >= n]
    view = nx.restricted_view(topology.graph, hidden_nodes, hidden_edges)
    return nx.has_path(view, s, d)
