"""Exception and warning types shared across the package."""


class LoopboundError(Exception):
    """Base class for all loopbound errors."""


class DomainError(LoopboundError):
    """A parameter lies outside the domain where the requested quantity is defined."""


class DivergenceError(LoopboundError):
    """The requested integral or bound is infinite for these parameters."""


class InfeasibleError(LoopboundError):
    """An optimization has an empty feasible set; no finite bound is produced."""


class EvaluationFailureError(LoopboundError):
    """An integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class UnreliableEstimateWarning(UserWarning):
    """A Monte Carlo estimate has too small an effective sample size to trust."""
