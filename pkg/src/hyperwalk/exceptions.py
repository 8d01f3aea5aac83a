"""Exception types raised across the package."""


class HypergraphError(ValueError):
    """Invalid hypergraph or malformed input matrix."""


class DisconnectedHypergraphError(HypergraphError):
    """Raised when an operation needs a connected hypergraph.

    Call :func:`hyperwalk.hypergraph.largest_component` first, or cluster
    each component separately.
    """


class NonConvergenceError(RuntimeError):
    """An iterative method hit its iteration cap before reaching tolerance."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class FormatError(ValueError):
    """Malformed file contents (Matrix Market, label CSV, config)."""
