"""Exception types shared across the package.

Two failure classes matter to callers: bad input (maps to HTTP 400 / CLI
exit 2) and a violated internal invariant (HTTP 500 / CLI exit 3).  Internal
errors carry a diagnostic dump so a failing instance can be reproduced.
"""


class InputError(ValueError):
    """The caller supplied malformed or out-of-contract input."""


class InternalError(RuntimeError):
    """An invariant the algorithms guarantee was violated at runtime."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}


class VerificationFailure(InternalError):
    """A property-suite run found an inequality violation (with reproducer)."""
