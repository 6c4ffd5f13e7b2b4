"""Error taxonomy shared by the whole package.

AlgebraError covers bad inputs and domain violations (maps to HTTP 400 /
exit code 2); InvariantViolation covers internal self-check failures that
indicate a bug rather than bad input (HTTP 500 / exit code 3).
"""


class AlgebraError(ValueError):
    """Invalid input or domain violation (caller's fault)."""


class InvariantViolation(RuntimeError):
    """An internal exactness or consistency check failed (our fault)."""
