"""Exception types raised across the package.

Every error derives from :class:`BruhatError`; input problems additionally
derive from :class:`ValueError` so callers can catch them generically.
"""


class BruhatError(Exception):
    pass


class InputError(BruhatError, ValueError):
    """Bad input: malformed data or a violated precondition."""


class InvariantViolation(BruhatError, AssertionError):
    """A mathematical invariant that must always hold was found broken."""


# scalars
class ZeroDenominator(InputError):
    pass


class NonInvertibleDenominator(InputError):
    pass


class ZeroElement(InputError):
    pass


class NotPrime(InputError):
    pass


class FieldMismatch(InputError):
    pass


# linear algebra
class ShapeMismatch(InputError):
    pass


class ZeroVector(InputError):
    pass


class RankDeficient(InputError):
    pass


# complexes
class InvalidComplex(InputError):
    pass


class NotChainMap(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NotABasis(InputError):
    pass


# move calculus
class MoveError(InputError):
    pass


class DeathNotCancellable(MoveError):
    pass


class SwapBlockedByIncidence(MoveError):
    pass


class SlideDegreeMismatch(MoveError):
    pass


class PositionOutOfRange(MoveError):
    pass


class NotAMaxwellEvent(InputError):
    pass


class AcyclicityViolated(InputError):
    pass


class CharTwoField(InputError):
    pass


# generators
class UnknownGenerator(InputError):
    pass


class BadParameter(InputError):
    pass
