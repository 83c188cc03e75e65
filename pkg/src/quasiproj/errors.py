"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code and a short machine-readable tag
that the CLI prints as the prefix of its single error line.
"""


class QuasiprojError(Exception):
    exit_code = 1
    tag = "ERROR"


class ConfigError(QuasiprojError, ValueError):
    """Invalid group, index, axis selection or run configuration."""

    exit_code = 2
    tag = "CONFIG"


class UnsupportedError(QuasiprojError):
    """No Voronoi data for the requested (group, lattice) pair."""

    exit_code = 3
    tag = "UNSUPPORTED"


class BudgetExceededError(QuasiprojError):
    exit_code = 4
    tag = "BUDGET"

    def __init__(self, requested, budget):
        super().__init__(f"point budget exceeded: {requested} > {budget}")
        self.requested = requested
        self.budget = budget


class SpectralError(QuasiprojError):
    """Eigenvalues could not be matched to exponents, or a frame check failed."""

    tag = "SPECTRAL"


class VerificationError(QuasiprojError):
    exit_code = 5
    tag = "VERIFY"
