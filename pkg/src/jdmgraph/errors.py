"""Exception types raised across the package."""


class JDMError(ValueError):
    """Base class for domain errors."""


class NonIntegerDegreeCount(JDMError):
    def __init__(self, degree, endpoints):
        self.degree = degree
        self.endpoints = endpoints
        super().__init__(
            f"degree {degree}: {endpoints} endpoints is not a multiple of {degree}"
        )


class NotGraphical(JDMError):
    def __init__(self, report=None):
        self.report = report
        detail = ""
        if report is not None and report.violations:
            detail = ": " + "; ".join(v.detail for v in report.violations)
        super().__init__("joint degree matrix is not graphical" + detail)


class EmptyGraph(JDMError):
    pass


class Infeasible(JDMError):
    """A block degree sequence cannot be realized as a simple graph."""


class InternalInfeasibility(AssertionError):
    """The greedy construction got stuck; should be unreachable for graphical input."""


class UnknownDegreeClass(JDMError):
    pass


class TooLarge(JDMError):
    pass


class LimitExceeded(JDMError):
    pass


class EmptySeries(JDMError):
    pass


class ZeroVariance(JDMError):
    pass


class LagTooLarge(JDMError):
    pass


class InfeasibleSpec(JDMError):
    pass


class ParseError(JDMError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class SimplicityViolation(ParseError):
    """A self-loop or repeated pair in an edge list read in simple mode."""
