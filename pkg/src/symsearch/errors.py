"""Exception hierarchy shared by every module in the package."""


class SearchError(Exception):
    """Base class for all symsearch errors."""


class ResourceLimit(SearchError):
    """A configured node cap was exceeded."""

    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"node cap of {cap} states exceeded")


class NotInvertible(SearchError):
    """An action met during bidirectional search has no declared inverse."""

    def __init__(self, action):
        self.action = action
        super().__init__(f"action {action} has no declared inverse")


class NoGoalEnumeration(SearchError):
    pass


class PreconditionFailed(SearchError):
    pass


class InvalidSymmetry(SearchError):
    def __init__(self, name, report):
        self.name = name
        self.report = report
        super().__init__(f"symmetry {name!r} is not an automorphism: {report.reason}")


class InconsistentBookkeeping(SearchError):
    pass


class InvalidParameter(SearchError, ValueError):
    pass


class UnknownDomain(SearchError, ValueError):
    pass


class EmptyBelief(SearchError, ValueError):
    pass


class SearchFailed(SearchError):
    pass


class StepBudgetExceeded(SearchError):
    def __init__(self, trace, budget):
        self.trace = trace
        self.budget = budget
        super().__init__(f"episode did not terminate within {budget} steps")


class ParseError(SearchError):
    """Syntax error in a problem file. ``line`` is 1-based."""

    def __init__(self, line, token, message):
        self.line = line
        self.token = token
        self.message = message
        super().__init__(f"line {line}: {message} (at {token!r})")


class SemanticError(SearchError):
    def __init__(self, line, token, message):
        self.line = line
        self.token = token
        self.message = message
        super().__init__(f"line {line}: {message} (at {token!r})")
