"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class DigitPatternsError(Exception):
    exit_code = 1


class ValidationError(DigitPatternsError, ValueError):
    """Input violates a documented precondition."""

    exit_code = 2


class BudgetError(DigitPatternsError):
    """Requested work or memory exceeds the configured budget."""

    exit_code = 3


class InvariantError(DigitPatternsError, AssertionError):
    """A self-check on computed results failed."""

    exit_code = 4
