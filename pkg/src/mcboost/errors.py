"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2,
SolverError -> 3.
"""


class McBoostError(Exception):
    """Base class for all library errors."""


class ConfigError(McBoostError):
    """Invalid configuration or arguments."""


class DataError(McBoostError):
    """Dataset loading / validation failure."""


class SolverError(McBoostError):
    """Master problem solver failure (non-convergence, internal LP error)."""
