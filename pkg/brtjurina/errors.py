"""Exceptions raised by the package.

Every error carries enough context for the command line to print a
diagnostic; `brtjurina.cli.run_cli` maps the classes to exit codes.
"""


class BrTjurinaError(Exception):
    """Base class of all package errors."""

    exit_code = 3


class InputError(BrTjurinaError):
    """Malformed or inconsistent input (exit code 3)."""

    exit_code = 3


class ParseError(InputError):
    """Syntax error in an expression or a case file.

    Args:
        message (str): What went wrong.
        line (int): 1-based line of the offending token.
        column (int): 1-based column of the offending token.
    """

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f'{message} (line {line}, column {column})')


class RingMismatchError(InputError):
    """Operands live in different polynomial rings."""


class RankMismatchError(InputError):
    """Free module elements or submodules of different ranks were mixed."""


class ArgumentRangeError(InputError):
    """An index or size argument is outside its admissible range."""


class HypothesisError(BrTjurinaError):
    """The input violates a hypothesis of the requested invariant (exit code 1).

    Args:
        message (str): Summary of the rejection.
        diagnostics (list of str): One line per violated hypothesis, e.g.
            the minor that fails the invariance test.
    """

    exit_code = 1

    def __init__(self, message, diagnostics=None):
        self.diagnostics = list(diagnostics or [])
        super().__init__(message)


class InclusionError(HypothesisError):
    """A generator of the smaller module is not a member of the larger one."""


class VerificationError(BrTjurinaError):
    """An identity check produced a nonzero residual (exit code 2)."""

    exit_code = 2

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ConsistencyError(VerificationError):
    """Two independent computations of the same quantity disagree."""
