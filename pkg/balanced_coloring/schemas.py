"""
Pydantic schemas for files and JSON results
"""

from datetime import datetime
from typing import Any, Optional

from pydantic import BaseModel, field_validator, model_validator

from balanced_coloring.models.coloring import Coloring
from balanced_coloring.reduction import PaddingGadget, ReductionCertificate


class ColoringFile(BaseModel):
    k: int
    colors: list[int]

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: int) -> int:
        if v < 2:
            raise ValueError("k must be at least 2")
        return v

    @model_validator(mode="after")
    def validate_colors(self) -> "ColoringFile":
        for v, color in enumerate(self.colors):
            if not 1 <= color <= self.k:
                raise ValueError("vertex " + str(v) + " has color " + str(color) + " outside 1.." + str(self.k))
        return self

    @classmethod
    def from_coloring(cls, coloring: Coloring) -> "ColoringFile":
        return cls(k=coloring.k, colors=list(coloring.colors))

    def to_coloring(self) -> Coloring:
        return Coloring(self.k, tuple(self.colors))


class CheckResultResponse(BaseModel):
    name: str
    status: str
    detail: str = ""
    witness: Optional[dict[str, Any]] = None

    @classmethod
    def from_check(cls, check) -> "CheckResultResponse":
        return cls(name=check.name, status=check.status.value, detail=check.detail, witness=check.witness)


class DiagnosticsResponse(BaseModel):
    k: int
    verdict: str
    checks: list[CheckResultResponse]

    @classmethod
    def from_report(cls, report) -> "DiagnosticsResponse":
        return cls(
            k=report.k,
            verdict=report.verdict.value,
            checks=[CheckResultResponse.from_check(check) for check in report.checks],
        )


class BalanceVerdictResponse(BaseModel):
    balanced: bool
    mode: str
    vertex: Optional[int] = None
    counts: Optional[list[int]] = None

    @classmethod
    def from_verdict(cls, verdict) -> "BalanceVerdictResponse":
        counts = None if verdict.counts is None else list(verdict.counts)
        return cls(balanced=verdict.balanced, mode=verdict.mode.value, vertex=verdict.vertex, counts=counts)


class ClassStatsResponse(BaseModel):
    k: int
    sizes: list[int]
    intra_edges: list[int]
    cross_edges: dict[str, int]  # "i,j" with i < j
    identities: list[CheckResultResponse] = []


class SearchStatsResponse(BaseModel):
    nodes: int
    max_depth: int
    wall_time: Optional[float] = None


class SolveResultResponse(BaseModel):
    status: str
    k: int
    mode: str
    coloring: Optional[list[int]] = None
    reason: str = ""
    stats: SearchStatsResponse
    preflight: Optional[DiagnosticsResponse] = None


class ColoredGraphResponse(BaseModel):
    construction: str
    parameters: dict[str, Any]
    mode: str
    k: int
    vertex_count: int
    edge_count: int
    class_sizes: list[int]
    graph_path: Optional[str] = None
    coloring_path: Optional[str] = None
    embedding: Optional[list[int]] = None

    @field_validator("class_sizes")
    @classmethod
    def validate_class_sizes(cls, v: list[int]) -> list[int]:
        if any(size < 0 for size in v):
            raise ValueError("class sizes are nonnegative")
        return v


class ObstructionResponse(BaseModel):
    k: int
    left_degree: int
    right_degree: int
    product_degree: int
    residue: int
    vertex: list[int]


class PaddingGadgetSchema(BaseModel):
    central: int
    clique_a: list[int]
    clique_b: list[int]


class EdgeCliqueSchema(BaseModel):
    edge: tuple[int, int]
    clique: list[int]


class VertexPaddingSchema(BaseModel):
    vertex: int
    gadgets: list[PaddingGadgetSchema]


class ReductionCertificateFile(BaseModel):
    k: int
    original_vertices: list[int]
    edge_cliques: list[EdgeCliqueSchema]
    padding: list[VertexPaddingSchema]

    @classmethod
    def from_certificate(cls, certificate: ReductionCertificate) -> "ReductionCertificateFile":
        return cls(
            k=certificate.k,
            original_vertices=list(certificate.original_vertices),
            edge_cliques=[
                EdgeCliqueSchema(edge=edge, clique=list(clique))
                for edge, clique in certificate.edge_cliques.items()
            ],
            padding=[
                VertexPaddingSchema(vertex=v, gadgets=[
                    PaddingGadgetSchema(central=g.central, clique_a=list(g.clique_a), clique_b=list(g.clique_b))
                    for g in gadgets
                ])
                for v, gadgets in certificate.padding.items()
            ],
        )

    def to_certificate(self) -> ReductionCertificate:
        return ReductionCertificate(
            self.k,
            tuple(self.original_vertices),
            {tuple(item.edge): tuple(item.clique) for item in self.edge_cliques},
            {
                item.vertex: tuple(
                    PaddingGadget(g.central, tuple(g.clique_a), tuple(g.clique_b)) for g in item.gadgets
                )
                for item in self.padding
            },
        )


class EquivalenceReportResponse(BaseModel):
    k: int
    reduced_order: int
    colorable: bool
    status: str
    agreement: Optional[bool]
    nodes: int
    extracted: Optional[list[int]] = None


class ReductionResponse(BaseModel):
    k: int
    original_order: int
    reduced_order: int
    expected_order: int
    graph_path: str
    certificate_path: str
    lifted_coloring_path: Optional[str] = None
    dropped_isolated: list[int] = []
    equivalence: Optional[EquivalenceReportResponse] = None


class CertifiedColoringResponse(BaseModel):
    id: int
    construction: str
    mode: str
    k: int
    vertex_count: int
    edge_count: int
    graph_digest: str
    class_sizes: str
    created_at: Optional[datetime] = None

    class Config:
        from_attributes = True
