"""
Database configuration and initialization for the certified-coloring corpus
"""

from contextlib import contextmanager
from typing import Iterator

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from balanced_coloring.config import get_settings

Base = declarative_base()


def create_store_engine(database_url: str | None = None, echo: bool = False) -> Engine:
    """Create an engine for the corpus store (defaults to the configured URL)."""
    return create_engine(database_url or get_settings().database_url, echo=echo)


@contextmanager
def get_database(engine: Engine) -> Iterator[Session]:
    """Yield a session bound to the corpus store engine."""
    SessionLocal = sessionmaker(engine, class_=Session, expire_on_commit=False)
    session = SessionLocal()
    try:
        yield session
    finally:
        session.close()


def init_database(engine: Engine) -> None:
    """Initialize the database with tables"""
    # Models must be imported so their tables register on Base.metadata
    from balanced_coloring import models  # noqa: F401

    Base.metadata.create_all(engine)
