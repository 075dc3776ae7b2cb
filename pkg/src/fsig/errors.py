"""Exception hierarchy shared by the engines and the CLI.

The CLI maps each family to a fixed exit code, so new exceptions should
subclass one of the three families below rather than ``FsigError`` directly.
"""

from __future__ import annotations


class FsigError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(FsigError, ValueError):
    """Input data violates a precondition (exit code 2)."""


class NotFaithful(InvalidInput):
    pass


class NotSmall(InvalidInput):
    pass


class PDividesGroupOrder(InvalidInput):
    pass


class NonInvertible(InvalidInput):
    pass


class DimensionTooLarge(InvalidInput):
    pass


class SmallnessViolation(InvalidInput):
    pass


class InvalidGroupSpec(InvalidInput):
    pass


class StructureMismatch(InvalidInput):
    """Two quasi-polynomials with different (p, modulus, degree) were compared."""


class OrderMismatch(InvalidInput):
    """Cyclotomic operands live in different fields Q(zeta_N)."""


class MissingResidue(InvalidInput):
    pass


class CapExceeded(FsigError):
    """The brute-force oracle would enumerate more points than allowed (exit code 3)."""


class InconsistentGroupData(FsigError, ArithmeticError):
    """A character sum came out non-rational or non-integral (exit code 4)."""


class NotRational(InconsistentGroupData):
    pass


class NotInteger(InconsistentGroupData):
    pass
