"""Exception hierarchy shared by every module."""


class GroupTestError(Exception):
    """Base class for all errors raised by this package."""


class BadParameter(GroupTestError, ValueError):
    pass


class BadScenario(GroupTestError, ValueError):
    pass


class EmptyMemberSet(GroupTestError, ValueError):
    """A member set is empty, so no transversal exists (covering number is infinite)."""


class EmptyEdge(GroupTestError, ValueError):
    pass


class ConstructionFailure(GroupTestError):
    """A randomized construction gave up after exhausting its restarts."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class BudgetExceeded(GroupTestError):
    pass


class StrategyError(GroupTestError):
    pass


class InsufficientNoPool(StrategyError):
    """No two disjoint NO-answered queries are large enough to host the gadgets."""


class IncompleteTranscript(GroupTestError, ValueError):
    pass
