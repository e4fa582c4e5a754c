"""
Data models for polycover
Pydantic models for JSON inputs (ideals, graphs, covering matrices),
requests and reports
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from utils import parse_monomial, parse_rational


class Command(str, Enum):
    """Subcommands understood by the runner"""

    VERTICES = "vertices"
    NEWTON = "newton"
    IRREDUCIBLE_POLYHEDRON = "irreducible-polyhedron"
    REES_FACETS = "rees-facets"
    HILBERT_BASIS = "hilbert-basis"
    REES_GENERATORS = "rees-generators"
    POWER = "power"
    SYMBOLIC_POWER = "symbolic-power"
    CLOSURE_POWER = "closure-power"
    NORMAL = "normal"
    MFMC = "mfmc"
    NP_EQ_IP = "np-eq-ip"
    WALDSCHMIDT = "waldschmidt"
    FILTRATION = "filtration"
    RESURGENCE_IC = "resurgence-ic"
    GRAPH_INVARIANTS = "graph-invariants"
    COVER_BOUND = "cover-bound"
    EDGE_BOUND = "edge-bound"
    DECOMPOSE = "decompose"
    ALEXANDER_DUAL = "alexander-dual"


class AppendixProcedure(str, Enum):
    """Bundled replays with committed golden outputs"""

    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"


class IdealSpec(BaseModel):
    """Monomial ideal {"vars": s, "gens": [[e1..es], "t1^2*t3", ...]}"""

    vars: int = Field(..., ge=1, description="Number of variables s")
    gens: List[Union[List[int], str]] = Field(..., min_length=1, description="Generators")

    @model_validator(mode="after")
    def check_lengths(self):
        for gen in self.gens:
            if isinstance(gen, list):
                if len(gen) != self.vars:
                    raise ValueError(f"generator {gen} does not have {self.vars} exponents")
                if any(e < 0 for e in gen):
                    raise ValueError(f"generator {gen} has a negative exponent")
            else:
                parse_monomial(gen, self.vars)
        return self

    def exponents(self) -> List[tuple]:
        return [
            tuple(gen) if isinstance(gen, list) else parse_monomial(gen, self.vars)
            for gen in self.gens
        ]


class GraphSpec(BaseModel):
    """Simple graph {"vertices": s, "edges": [[i, j], ...]}, 1-based"""

    vertices: int = Field(..., ge=1, description="Number of vertices")
    edges: List[List[int]] = Field(..., min_length=1, description="Edges as vertex pairs")

    @model_validator(mode="after")
    def check_edges(self):
        for edge in self.edges:
            if len(edge) != 2 or edge[0] == edge[1]:
                raise ValueError(f"edge {edge} is not a pair of distinct vertices")
            if not all(1 <= v <= self.vertices for v in edge):
                raise ValueError(f"edge {edge} leaves 1..{self.vertices}")
        return self


class MatrixSpec(BaseModel):
    """Covering matrix by columns {"vars": s, "columns": [["p/q", ...], ...]}"""

    vars: int = Field(..., ge=1, description="Number of rows s")
    columns: List[List[Union[int, str]]] = Field(..., min_length=1, description="Columns")

    @field_validator("columns")
    @classmethod
    def check_rationals(cls, columns):
        for column in columns:
            for entry in column:
                parse_rational(entry)
        return columns

    @model_validator(mode="after")
    def check_shape(self):
        for column in self.columns:
            if len(column) != self.vars:
                raise ValueError(f"column {column} does not have {self.vars} entries")
        return self


class Request(BaseModel):
    """One invocation: a command, its inputs and its flags"""

    command: Command
    ideal: Optional[IdealSpec] = None
    graph: Optional[GraphSpec] = None
    matrix: Optional[MatrixSpec] = None
    n: Optional[int] = Field(None, ge=1, description="Power or filtration index")
    max_n: int = Field(4, ge=1, description="Range checked by consistency tests")
    symbolic: bool = Field(False, description="Use the symbolic filtration of the ideal")
    edge_ideal: bool = Field(False, description="Use the edge ideal of the graph")
    cover_ideal: bool = Field(False, description="Use the cover ideal of the graph")
    assume_strict: bool = Field(False, description="Accept strictness without evidence")
    acknowledge_normal_components: bool = Field(
        False, description="Assume isolated components are normal"
    )
    raise_cap: bool = Field(False, description="Lift the induced-subgraph cap")


class Certificate(BaseModel):
    """Machine-checkable evidence re-validated by `verify`"""

    kind: str = Field(..., description="Certificate type")
    data: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    """Deterministic output of one request"""

    command: str
    request: Dict[str, Any]
    result: Dict[str, Any]
    certificate: Optional[Certificate] = None
    timing_ms: Optional[float] = Field(None, description="Only set with --timing")

    def payload(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)
