"""Errors shared by the qmat modules."""


class GuardExceededError(RuntimeError):
    """A brute-force or symbolic computation would exceed its configured cost bound."""


class ClosureError(ValueError):
    """A generator subset is not closed under the correction terms of the relations."""
