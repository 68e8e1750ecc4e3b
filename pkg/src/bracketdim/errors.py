"""Exception hierarchy shared by every module.

Domain errors derive from :class:`BracketDimError`; the CLI maps them to
exit status 1.
"""


class BracketDimError(ValueError):
    """Base class for all domain errors raised by this package."""


class LimitExceeded(BracketDimError):
    """An enumeration or search would exceed its configured cap."""


# -- tournament structure ---------------------------------------------------

class TournamentError(BracketDimError):
    pass


class BadVertex(TournamentError):
    pass


class DuplicateEdge(TournamentError):
    pass


class NoSink(TournamentError):
    pass


class MultipleSinks(TournamentError):
    pass


class MultipleOutEdges(TournamentError):
    pass


class CycleDetected(TournamentError):
    pass


class UnaryInNeighbor(TournamentError):
    def __init__(self, vertex, message=None):
        self.vertex = vertex
        super().__init__(message or f"vertex {vertex} has exactly one in-neighbor")


class DisconnectedVertex(TournamentError):
    pass


class NotAPlayer(TournamentError):
    pass


class SamePlayer(TournamentError):
    pass


class NotPowerOfTwo(TournamentError):
    pass


class TooFewPlayers(TournamentError):
    pass


class ParseError(BracketDimError):
    def __init__(self, message, line=None, offset=None):
        self.line = line
        self.offset = offset
        where = f" (line {line}, column {offset})" if line is not None else ""
        super().__init__(message + where)


# -- brackets and scoring ---------------------------------------------------

class BracketError(BracketDimError):
    pass


class FixedPointViolation(BracketError):
    def __init__(self, player, message=None):
        self.player = player
        super().__init__(message or f"player {player} is not mapped to itself")


class ChainViolation(BracketError):
    def __init__(self, match, message=None):
        self.match = match
        super().__init__(message or f"winner of match {match} did not win any feeding vertex")


class BracketMismatch(BracketError):
    pass


class CompanionPropertyViolated(BracketError):
    def __init__(self, player, message=None):
        self.player = player
        super().__init__(message or f"player {player} has no companion inside its block")


class TournamentMismatch(BracketDimError):
    """Objects built on different tournaments were combined."""


class ScoringError(BracketDimError):
    pass


class PlayerNotInMatch(BracketDimError):
    pass


# -- resolving sets ---------------------------------------------------------

class NotInU(BracketDimError):
    pass


class EmptyBase(BracketDimError):
    pass


class NoMatch(BracketDimError):
    """No bracket reproduces the given score vector."""


class Ambiguous(BracketDimError):
    """Several brackets reproduce the given score vector."""

    def __init__(self, candidates):
        self.candidates = list(candidates)
        super().__init__(f"{len(self.candidates)} brackets match the given scores")
