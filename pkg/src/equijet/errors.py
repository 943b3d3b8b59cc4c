"""Exception hierarchy shared across the package.

Every error carries an ``exit_code`` used by the command line driver:

* 1 -- usage and parse errors,
* 2 -- precondition violations (an operation was handed inputs outside its
  contract),
* 3 -- inconclusive outcomes: a decision would have to rely on a "vanishes
  identically" claim that is only certified modulo the truncation order,
* 4 -- internal-consistency failures: the inputs contradict their own
  declarations (e.g. a declared factorization that does not divide exactly).
"""


class EquijetError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class ParseError(EquijetError):
    """Syntax error in the expression language, with source location."""

    exit_code = 1

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UsageError(EquijetError):
    exit_code = 1


class PreconditionError(EquijetError):
    exit_code = 2


class ContextMismatchError(PreconditionError):
    pass


class UnknownVariableError(PreconditionError):
    pass


class NotAUnitError(PreconditionError):
    pass


class SubstitutionDivergenceError(PreconditionError):
    pass


class NotRegularError(PreconditionError):
    pass


class NoRegularDirectionError(PreconditionError):
    pass


class DegreeCapError(PreconditionError):
    pass


class CoprimalityError(PreconditionError):
    pass


class NotASolutionError(PreconditionError):
    pass


class InconclusiveError(EquijetError):
    """A zero-claim rests on truncated, non-exact data; no verdict is issued."""

    exit_code = 3


class ConsistencyError(EquijetError):
    exit_code = 4


class LemmaViolationError(ConsistencyError):
    """A divisor of the 1-form admits no constant; some declared factor was
    not actually irreducible."""
