"""
Database package for Balanced Coloring
"""

from .database import Base, get_database, init_database, create_store_engine

__all__ = ["Base", "get_database", "init_database", "create_store_engine"]
