"""
Configuration for Balanced Coloring.

Settings are read once from the environment; every budgeted operation also
accepts an explicit override.
"""

import os
from functools import lru_cache

from pydantic import BaseModel, ValidationError, field_validator

from balanced_coloring.errors import ConfigurationError

ENV_PREFIX = "CNBC_"

DEFAULT_VERTEX_BUDGET = 10**6
DEFAULT_ENUMERATION_BUDGET = 2**24
DEFAULT_DATABASE_URL = "sqlite:///./cnbc_corpus.db"


class Settings(BaseModel):
    vertex_budget: int = DEFAULT_VERTEX_BUDGET
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    database_url: str = DEFAULT_DATABASE_URL
    log_level: str = "WARNING"

    @field_validator("vertex_budget", "enumeration_budget")
    @classmethod
    def validate_budget(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Budgets must be positive")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        v = v.upper()
        if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError("Unknown log level: " + v)
        return v

    @classmethod
    def from_environ(cls, environ: dict[str, str] | None = None) -> "Settings":
        """Build settings from ``CNBC_*`` variables, ignoring unset ones."""
        environ = os.environ if environ is None else environ
        values = {}
        for field in cls.model_fields:
            key = ENV_PREFIX + field.upper()
            if key in environ:
                values[field] = environ[key]
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigurationError("Invalid environment configuration: " + str(exc)) from exc


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_environ()
