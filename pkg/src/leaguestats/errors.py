"""Exception hierarchy shared by all analysis modules.

The CLI maps :class:`LeagueStatsError` subclasses to exit status 1 and
prints the class name verbatim.
"""


class LeagueStatsError(ValueError):
    """Base class for data errors raised by the library."""


class MalformedRow(LeagueStatsError):
    pass


class InvariantViolation(LeagueStatsError):
    pass


class WrongRowCount(LeagueStatsError):
    pass


class MissingDescriptor(LeagueStatsError):
    """A partial season was asked for a column it does not carry."""


class ZeroTotal(LeagueStatsError):
    pass


class NonPositiveTotal(LeagueStatsError):
    pass


class DegenerateRange(LeagueStatsError):
    pass


class GridMismatch(LeagueStatsError):
    pass


class DegenerateColumn(LeagueStatsError):
    pass


class NotSymmetric(LeagueStatsError):
    pass


class NoConvergence(LeagueStatsError):
    pass


class EmptySeries(LeagueStatsError):
    pass
