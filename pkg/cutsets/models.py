"""
Data models for benchmark records, summaries and CLI configuration.
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class Method(str, Enum):
    """Cut set engines."""
    FAST = "fast"
    SHANNON = "shannon"
    COMBINATORIAL = "combinatorial"


class RecordStatus(str, Enum):
    """Outcome of one engine run."""
    OK = "ok"
    TIMEOUT = "timeout"
    ERROR = "error"


RECORD_COLUMNS = [
    "topology", "num_nodes", "num_edges", "src", "dst", "method", "status",
    "mps_time_ns", "mcs_time_ns", "num_mps", "num_mcs", "agreement",
]

PLOT_COLUMNS = ["topology", "method", "total_mps_time_ns", "total_mcs_time_ns"]


class BenchRecord(BaseModel):
    """One (topology, pair, method) measurement."""
    topology: str
    num_nodes: int
    num_edges: int
    src: str
    dst: str
    method: Method
    status: RecordStatus
    mps_time_ns: int = Field(..., ge=0, description="Median time of the path-set phase")
    mcs_time_ns: int = Field(..., ge=0, description="Median engine time; the budget on timeout")
    num_mps: int = Field(..., ge=0)
    num_mcs: Optional[int] = Field(None, ge=0, description="Unset unless status is ok")
    agreement: Optional[bool] = Field(None, description="Matches the reference engine; unset when not comparable")

    @model_validator(mode="after")
    def _timeout_has_no_count(self) -> "BenchRecord":
        if self.status != RecordStatus.OK and self.num_mcs is not None:
            raise ValueError("num_mcs must be unset for timeout and error records")
        return self

    def csv_row(self) -> Dict[str, object]:
        return {
            "topology": self.topology,
            "num_nodes": self.num_nodes,
            "num_edges": self.num_edges,
            "src": self.src,
            "dst": self.dst,
            "method": self.method.value,
            "status": self.status.value,
            "mps_time_ns": self.mps_time_ns,
            "mcs_time_ns": self.mcs_time_ns,
            "num_mps": self.num_mps,
            "num_mcs": self.num_mcs,
            "agreement": None if self.agreement is None else str(self.agreement).lower(),
        }


class MethodTotals(BaseModel):
    """Aggregate of one method over one topology."""
    total_mps_time_ns: int = 0
    total_mcs_time_ns: int = Field(0, description="Sum over ok records only")
    pairs: int = 0
    timeouts: int = 0
    errors: int = 0


class TopologySummary(BaseModel):
    agreement: bool = True
    methods: Dict[str, MethodTotals] = Field(default_factory=dict)


class BenchSummary(BaseModel):
    """Totals keyed by topology, then method."""
    topologies: Dict[str, TopologySummary] = Field(default_factory=dict)

    def to_json_dict(self) -> Dict[str, dict]:
        return {name: summary.model_dump() for name, summary in self.topologies.items()}


class GeneratorParams(BaseModel):
    """Seeded random topology parameters."""
    n: int = Field(..., ge=2, description="Number of nodes")
    p: float = Field(..., gt=0.0, le=1.0, description="Edge probability")
    seed: int = Field(0, description="Random seed")

    @classmethod
    def parse(cls, text: str) -> "GeneratorParams":
        """Parse 'n=17,p=0.25,seed=7'."""
        values = {}
        for part in text.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise ValueError(f"expected key=value, got '{part}'")
            key, value = part.split("=", 1)
            values[key.strip()] = value.strip()
        unknown = set(values) - {"n", "p", "seed"}
        if unknown:
            raise ValueError(f"unknown generator parameters: {', '.join(sorted(unknown))}")
        return cls.model_validate(values)


class CliConfig(BaseModel):
    """Validated command-line configuration."""
    subcommand: str
    topology_paths: List[str] = Field(default_factory=list)
    src: Optional[str] = None
    dst: Optional[str] = None
    methods: List[Method] = Field(default_factory=lambda: [Method.FAST])
    include_edges: bool = False
    timeout: float = Field(30.0, gt=0, description="Per-engine timeout in seconds")
    repetitions: int = Field(3, ge=1)
    threads: int = Field(1, ge=1)
    output: Optional[str] = None
    summary: Optional[str] = None
    format: str = "json"
    generate: List[GeneratorParams] = Field(default_factory=list)
    pairs: Optional[List[Tuple[str, str]]] = None
    verify: bool = False

    @field_validator("methods")
    @classmethod
    def _methods_not_empty(cls, methods: List[Method]) -> List[Method]:
        if not methods:
            raise ValueError("at least one method is required")
        return list(dict.fromkeys(methods))

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("json", "table"):
            raise ValueError(f"unknown output format: {value}")
        return value
