"""
Solve run model for Balanced Coloring.

Each row is the outcome of one solver invocation.
"""

from sqlalchemy import Column, DateTime, Float, Integer, String
from sqlalchemy.sql import func

from balanced_coloring.database import Base


class SolveRun(Base):
    __tablename__ = "solve_runs"

    id = Column(Integer, primary_key=True, index=True)
    graph_digest = Column(String(64), nullable=False, index=True)
    vertex_count = Column(Integer, nullable=False)
    edge_count = Column(Integer, nullable=False)
    k = Column(Integer, nullable=False)
    mode = Column(String(10), nullable=False)
    status = Column(String(20), nullable=False)  # satisfiable, unsatisfiable, timeout
    nodes = Column(Integer, default=0)
    max_depth = Column(Integer, default=0)
    wall_time = Column(Float, default=0.0)  # seconds
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    def __repr__(self):
        return (
            "<SolveRun(id=" + str(self.id)
            + ", k=" + str(self.k)
            + ", mode=" + str(self.mode)
            + ", status=" + str(self.status)
            + ", nodes=" + str(self.nodes) + ")>"
        )
