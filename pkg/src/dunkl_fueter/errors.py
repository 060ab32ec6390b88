"""Exception hierarchy.

Errors split into two families: ``InputError`` for bad user input (the CLI maps
these to exit code 2) and ``InternalError`` for violated mathematical
invariants (exit code 3).
"""


class DunklError(Exception):
    """Base class for every error raised by the engine."""


class InputError(DunklError, ValueError):
    pass


class InternalError(DunklError, ArithmeticError):
    pass


class DimensionMismatch(InputError):
    pass


class NotParavector(InputError):
    pass


class ZeroVector(InputError, ZeroDivisionError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class ZeroLinearForm(InputError, ZeroDivisionError):
    pass


class NonDivisible(InternalError):
    """Remainder of a linear-form division was not zero."""


class UnknownGroup(InputError):
    pass


class BadKappaArity(InputError):
    pass


class NegativeKappa(InputError):
    pass


class ZeroRoot(InputError):
    pass


class ParityViolation(InputError):
    """The Dunkl dimension is not an odd integer (or a seed parity check failed)."""


class SeedOrderTooHigh(InputError):
    pass


class FactorNotMonogenic(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class DependsOnX0(InputError):
    pass


class ParseError(InputError):
    pass


class SolveFailed(InternalError):
    pass
