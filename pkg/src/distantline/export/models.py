"""Pydantic models for exported documents."""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

FORMAT_VERSION = 1


class RingMeta(BaseModel):
    """Ring metadata: order, structure tag and constructor parameters."""

    model_config = ConfigDict(extra="allow")

    order: int
    structure_tag: str
    name: str


class PointModel(BaseModel):
    index: int
    rep_a: int
    rep_b: int
    literal: str


class LineExport(BaseModel):
    """A projective line with its relations as index lists."""

    format: Literal[1] = FORMAT_VERSION
    ring: RingMeta
    points: List[PointModel]
    distant_edges: List[List[int]]
    parallel_classes: List[List[int]]
    adjacency_edges: Optional[List[List[int]]] = None


class PointMapExport(BaseModel):
    format: Literal[1] = FORMAT_VERSION
    source: str
    target: str
    table: List[int]
    provenance: str
    note: str = ""


class CertificateExport(BaseModel):
    """alpha as an element table, gamma as a 2x2 element matrix, sigma as an index array."""

    format: Literal[1] = FORMAT_VERSION
    kind: str
    alpha: Optional[List[int]] = None
    alpha_kind: Optional[str] = None
    gamma: Optional[List[List[int]]] = None
    gamma_literals: Optional[List[List[str]]] = None
    beta: int = 0
    sigma: Optional[List[int]] = None
    components: List["CertificateExport"] = Field(default_factory=list)


class SpaceExport(BaseModel):
    """A partial linear space: points are 0..points-1."""

    format: Literal[1] = FORMAT_VERSION
    points: int
    lines: List[List[int]]


class CheckModel(BaseModel):
    description: str
    expected: Any
    actual: Any
    status: Literal["pass", "fail", "violation"]


class ReportModel(BaseModel):
    """A verification receipt."""

    format: Literal[1] = FORMAT_VERSION
    suite: str
    started: str
    completed: Optional[str] = None
    status: Literal["pass", "fail", "violation"]
    checks: List[CheckModel]
    notes: Dict[str, Any] = Field(default_factory=dict)
