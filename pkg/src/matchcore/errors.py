"""Exception types shared across the package."""


class MatchcoreError(Exception):
    """Base class for all errors raised by this package."""


class InstanceFormatError(MatchcoreError):
    """An instance file is malformed or violates an instance invariant.

    Carries the 1-based line number where the problem was found.
    """

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


class InvariantViolation(MatchcoreError):
    """An internal exactness invariant failed.

    These checks guard identities that hold for every optimal solution
    (strong duality, equal-weight alternating matchings, per-cycle cover
    identities). A violation always indicates a bug upstream, never bad
    user input, so it is raised as a hard failure.
    """


class BoundExceeded(MatchcoreError):
    """An exhaustive oracle refused to run past its configured size bound.

    The brute-force oracles are exponential by design and never silently
    approximate; callers either raise the bound or accept the refusal.
    """
