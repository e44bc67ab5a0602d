"""Exception types shared across the planners and tooling."""


class RiumapfError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(RiumapfError, ValueError):
    pass


class InvalidInstance(RiumapfError, ValueError):
    pass


class InvalidPlan(RiumapfError, ValueError):
    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class GenerationFailed(RiumapfError):
    """The random sampler could not place n agents at pairwise distance > r."""


class InfeasibleAssignment(RiumapfError):
    """No perfect matching avoids the banned agent/target pairs."""


class PreconditionViolated(RiumapfError, ValueError):
    pass


class SolverFailure(RiumapfError):
    """A planner finished without a plan. ``reason`` is a short machine tag."""

    reason = "failed"

    def __init__(self, message="", last=None):
        super().__init__(message or self.reason)
        self.last = last


class NoPlan(SolverFailure):
    reason = "infeasible"


class SearchTimeout(SolverFailure):
    reason = "timeout"


class CapReached(SolverFailure):
    reason = "cap-reached"


class Stalled(SolverFailure):
    reason = "stalled"


class TooLarge(SolverFailure):
    reason = "too-large"
