"""Shared exception types."""


class ConvergenceError(RuntimeError):
    """An iterative solver (root finder, Newton) failed to converge."""


class BracketError(RuntimeError):
    """A root bracket is invalid; usually signals violated preconditions."""
