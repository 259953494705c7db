"""
Shared builders for the test suite.
"""

import random
from pathlib import Path
from typing import List

from cutsets.generator import generate_topology
from cutsets.models import GeneratorParams
from cutsets.setfamily import SetFamily
from cutsets.topology import Topology

DATA_DIR = Path(__file__).parent.parent / "data"

# Cut sets of S-T in mesh6, canonical order
MESH_MCS = [["A", "C"], ["A", "D"], ["B", "D"], ["B", "E"], ["B", "F"]]


def family(topology: Topology, *sets: str) -> SetFamily:
    """Family from single-character node labels, e.g. family(t, "AC", "AD")."""
    return SetFamily(
        (sum(1 << topology.index_of(label) for label in members) for members in sets),
        minimal=True
    )


def labels(topology: Topology, family: SetFamily) -> List[List[str]]:
    return family.to_labels(topology.element_label)


def random_topologies(count: int, max_nodes: int, seed: int = 0, max_p: float = 0.6) -> List[Topology]:
    """Seeded connected random graphs with 2..max_nodes nodes."""
    rng = random.Random(seed)
    topologies = []
    for i in range(count):
        params = GeneratorParams(
            n=rng.randint(2, max_nodes),
            p=round(rng.uniform(0.15, max_p), 2),
            seed=seed * 10_000 + i
        )
        topologies.append(generate_topology(params))
    return topologies
