"""
Exception hierarchy for Balanced Coloring.

Every error carries a human-readable ``detail`` and the CLI exit code it maps to.
"""


class BalancedColoringError(Exception):
    """Base class for all expected, user-facing failures."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigurationError(BalancedColoringError):
    """An environment setting could not be parsed."""


class GraphError(BalancedColoringError):
    """A graph violates the simple-graph invariants."""


class ParseError(BalancedColoringError):
    """A graph or coloring file is malformed."""

    def __init__(self, detail: str, line_number: int | None = None):
        if line_number is not None:
            detail = "line " + str(line_number) + ": " + detail
        super().__init__(detail)
        self.line_number = line_number


class BudgetExceededError(BalancedColoringError):
    """A construction or enumeration would exceed its configured budget."""


class ColoringError(BalancedColoringError):
    """A coloring does not fit its graph or its declared number of colors."""


class HypothesisError(BalancedColoringError):
    """A construction or transfer was called outside its hypotheses."""


class ContractViolation(BalancedColoringError):
    """A post-verifier was invoked on input that breaks its contract."""


class SolverError(BalancedColoringError):
    """Solver options are inconsistent with the instance."""
