"""
Random Topology Generator
Seeded, connected G(n, p) topologies for scaling experiments.
"""

import random

import networkx as nx
from loguru import logger

from cutsets.models import GeneratorParams
from cutsets.topology import Topology


def topology_name(params: GeneratorParams) -> str:
    return f"gnp-n{params.n}-p{params.p:g}-s{params.seed}"


def generate_topology(params: GeneratorParams) -> Topology:
    """
    Generate a connected random topology.

    The G(n, p) graph is drawn with the given seed; when it falls apart into
    several components, each component after the first is bridged to a node
    picked at random among the ones already joined. The same parameters
    always give the same topology.

    Args:
        params: Node count, edge probability and seed

    Returns:
        Topology labelled v00, v01, ... (zero padded, so label order matches
        generation order)
    """
    graph = nx.gnp_random_graph(params.n, params.p, seed=params.seed)
    rng = random.Random(params.seed)

    components = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    joined = list(components[0])
    for component in components[1:]:
        graph.add_edge(rng.choice(joined), rng.choice(component))
        joined.extend(component)

    if len(components) > 1:
        logger.debug(f"Stitched {len(components)} components into one graph")

    width = max(2, len(str(params.n - 1)))
    labels = [f"v{i:0{width}d}" for i in range(params.n)]
    topology = Topology.build(
        topology_name(params),
        labels,
        [(labels[u], labels[v]) for u, v in graph.edges()]
    )
    logger.info(f"Generated topology '{topology.name}': |V|={topology.num_nodes}, |E|={topology.num_edges}")
    return topology
