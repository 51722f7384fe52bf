"""Exception hierarchy shared by the planner modules and the CLI."""


class DexliftError(Exception):
    """Base class for all planner errors."""


class DomainError(DexliftError, ValueError):
    """An argument lies outside the domain of a model relation."""


class HeightOutOfRangeError(DomainError):
    """Requested lift height has no finite catenary solution (z1 >= L)."""


class SingularStateError(DexliftError):
    """State sits at the z1 -> L limit where the closed form degenerates."""


class SolverError(DexliftError):
    """Root bracketing or convergence failed, or a residual gate tripped."""


class ConfigError(DexliftError, ValueError):
    """Invalid run configuration (bad flags, preset, or step)."""
