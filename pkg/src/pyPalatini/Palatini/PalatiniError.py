class PalatiniError(Exception):
    """Base class of every error raised by the toolkit.
    """
    pass


# Field construction and arithmetic

class NonPrimeModulus(PalatiniError, ValueError):
    """The modulus requested for a prime or extension field is not a prime in range.
    """
    pass


class IrreducibleSearchExhausted(PalatiniError):
    """No irreducible modulus was found for an extension field within the search budget.
    """
    pass


class DivisionByZero(PalatiniError, ZeroDivisionError):
    """Inversion of the zero element of a field, or division of a polynomial by the zero polynomial.
    """
    pass


class WrongFieldKind(PalatiniError, TypeError):
    """An operation was requested over a field kind that does not support it.
    """
    pass


class FieldMismatch(PalatiniError, TypeError):
    """Operands of a binary operation belong to different fields.
    """
    pass


# Shapes and arguments

class DimensionMismatch(PalatiniError, ValueError):
    """Operand shapes are incompatible.
    """
    pass


class ShapeError(PalatiniError, ValueError):
    """A matrix does not have the shape an operation requires, e.g. a pfaffian of a non-square matrix.
    """
    pass


class NotSkewSymmetric(PalatiniError, ValueError):
    """A matrix required to be skew-symmetric (with zero diagonal) is not.
    """
    pass


class RangeError(PalatiniError, ValueError):
    """A numerical parameter lies outside the range an operation is defined for.
    """
    pass


class ZeroVector(PalatiniError, ValueError):
    """The zero vector was given where a projective point is required.
    """
    pass


class DependentBasePoints(PalatiniError, ValueError):
    """The two points spanning a projective line are linearly dependent.
    """
    pass


class FieldTooSmall(PalatiniError, ValueError):
    """The field has too few elements for the requested construction and no extension was allowed.
    """
    pass


class InstanceFormatError(PalatiniError, ValueError):
    """A serialized instance could not be parsed.
    """
    pass


# Geometry

class DegeneratePfaffian(PalatiniError):
    """The pfaffian of the pencil matrix is identically zero, so the hypersurface it should cut out is undefined.
    """
    pass


class SamplingExhausted(PalatiniError):
    """The line budget for sampling points was spent before enough points were found.
    """
    pass


class NotOnY(PalatiniError, ValueError):
    """The pencil point is not a zero of the pfaffian.
    """
    pass


class CorankNotTwo(PalatiniError):
    """The pencil matrix at a point of the hypersurface has corank other than 2.

    :param int corank: The observed corank.
    """

    def __init__(self, message: str, corank: int):
        super().__init__(message)
        self.corank = corank


class NotOnX(PalatiniError, ValueError):
    """The vector is not a point of the scroll: the evaluation of the map V -> Hom(U, V*) at it has full rank.
    """
    pass


class FiberNotUnique(PalatiniError):
    """The vector lies on more than one line of the scroll.

    :param int nullity: The dimension of the kernel found.
    """

    def __init__(self, message: str, nullity: int):
        super().__init__(message)
        self.nullity = nullity


# Tangent space

class ResourceBudgetExceeded(PalatiniError, MemoryError):
    """The estimated memory of an elimination exceeds the configured budget.

    :param int estimate: The estimated peak memory, in bytes.
    :param int budget: The budget in force, in bytes.
    """

    def __init__(self, message: str, estimate: int, budget: int):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget


class NoStabilization(PalatiniError):
    """The tangent dimension was still dropping at the syzygy degree cap. Only raised in strict mode; otherwise the
    condition is recorded on the report.
    """
    pass


# Warnings

class GenericityNotProbed(UserWarning):
    """A computation that assumes a general instance was run on an instance that has not been shown to be general.
    """
    pass
