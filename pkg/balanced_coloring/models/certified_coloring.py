"""
Certified coloring model for Balanced Coloring.

Each row is a graph together with a coloring that passed its verifier at the
time of insertion. Rows are re-verified when loaded.
"""

import json

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.sql import func

from balanced_coloring.database import Base


class CertifiedColoring(Base):
    __tablename__ = "certified_colorings"

    id = Column(Integer, primary_key=True, index=True)
    construction = Column(String(50), nullable=False, index=True)
    parameters = Column(Text, nullable=False, default="{}")  # JSON object
    mode = Column(String(10), nullable=False, default="cnbc")
    k = Column(Integer, nullable=False, index=True)
    vertex_count = Column(Integer, nullable=False)
    edge_count = Column(Integer, nullable=False)
    graph_digest = Column(String(64), nullable=False, index=True)  # sha256 of canonical edge list
    edge_list = Column(Text, nullable=False)  # "u v" per line
    colors = Column(Text, nullable=False)  # comma-separated, indexed by vertex id
    class_sizes = Column(String(255), nullable=False)  # comma-separated |V_1|..|V_k|
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    @property
    def parameter_dict(self) -> dict:
        return json.loads(self.parameters) if self.parameters else {}

    @property
    def color_list(self) -> list[int]:
        return [int(c) for c in self.colors.split(",")] if self.colors else []

    def __repr__(self):
        return (
            "<CertifiedColoring(id=" + str(self.id)
            + ", construction='" + str(self.construction)
            + "', k=" + str(self.k)
            + ", vertices=" + str(self.vertex_count)
            + ", mode=" + str(self.mode) + ")>"
        )
