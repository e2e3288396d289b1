"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command line can
translate failures without a lookup table.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SEARCH_EXHAUSTED = 4
EXIT_VERIFICATION = 5


class P5Error(Exception):
    exit_code = 1


class ParseError(P5Error):
    exit_code = EXIT_PARSE


class PreconditionViolated(P5Error):
    """An input does not satisfy the documented precondition."""

    exit_code = EXIT_PRECONDITION


class LoopCreated(PreconditionViolated):
    pass


class NotBipartite(PreconditionViolated):
    pass


class SameVertex(PreconditionViolated):
    pass


class TooSmall(PreconditionViolated):
    pass


class BadAssignment(PreconditionViolated):
    pass


class WrongDegree(PreconditionViolated):
    pass


class WouldCreateLoop(PreconditionViolated):
    pass


class OddDegree(PreconditionViolated):
    pass


class NotFourRegular(PreconditionViolated):
    pass


class DivisibilityViolated(PreconditionViolated):
    pass


class ConnectivityViolated(PreconditionViolated):
    pass


class UnbalancedVertex(PreconditionViolated):
    pass


class CoverageGap(PreconditionViolated):
    pass


class SearchExhausted(P5Error):
    """A constructive search ran out of budget.

    When the documented preconditions hold this should not happen; it
    signals either a violated precondition or a bug.
    """

    exit_code = EXIT_SEARCH_EXHAUSTED


class PackingNotFound(SearchExhausted):
    pass


class Infeasible(SearchExhausted):
    pass


class NoAdmissiblePair(SearchExhausted):
    pass


class NoPerfectMatching(SearchExhausted):
    pass


class ExtensionImpossible(SearchExhausted):
    pass


class NoExtension(SearchExhausted):
    pass


class GenerationFailed(SearchExhausted):
    pass


class VerificationFailed(P5Error):
    exit_code = EXIT_VERIFICATION


class ClaimViolated(VerificationFailed):
    """A runtime-checked structural claim failed; the message holds a state dump."""
