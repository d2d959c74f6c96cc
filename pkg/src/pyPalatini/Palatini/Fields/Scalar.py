from typing import TYPE_CHECKING, Any

from ..PalatiniError import FieldMismatch

if TYPE_CHECKING:
    from .FieldCtx import FieldCtx


class Scalar:
    """
    An element of an exact field. A Scalar pairs a :class:`~pyPalatini.Palatini.Fields.FieldCtx.FieldCtx` with the
    raw representation the context computes on: an int residue for a prime field, a tuple of residues (lowest degree
    first) for an extension field, and a :class:`fractions.Fraction` for the rationals.

    Scalars are immutable and hashable. Arithmetic between Scalars of different fields raises
    :class:`~pyPalatini.Palatini.PalatiniError.FieldMismatch`; plain ints are coerced into the field.

    :param FieldCtx ctx: The field.
    :param Any raw: The raw representation, which must already be canonical for ctx.
    """

    __slots__ = ('_ctx', '_raw')

    @property
    def ctx(self) -> 'FieldCtx':
        return self._ctx

    @property
    def raw(self) -> Any:
        return self._raw

    @property
    def is_zero(self) -> bool:
        return self._ctx.r_is_zero(self._raw)

    def _coerce(self, other) -> Any:
        if isinstance(other, Scalar):
            if other._ctx != self._ctx:
                raise FieldMismatch(f'Cannot combine elements of {self._ctx} and {other._ctx}.')
            return other._raw
        if isinstance(other, int):
            return self._ctx.r_from_int(other)
        return NotImplemented

    def _wrap(self, raw) -> 'Scalar':
        return Scalar(self._ctx, raw)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._ctx.r_add(self._raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._ctx.r_sub(self._raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._ctx.r_sub(o, self._raw))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._ctx.r_mul(self._raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else \
            self._wrap(self._ctx.r_mul(self._raw, self._ctx.r_inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else \
            self._wrap(self._ctx.r_mul(o, self._ctx.r_inv(self._raw)))

    def __neg__(self) -> 'Scalar':
        return self._wrap(self._ctx.r_neg(self._raw))

    def __pow__(self, n: int) -> 'Scalar':
        return self._wrap(self._ctx.r_pow(self._raw, n))

    def inverse(self) -> 'Scalar':
        """The multiplicative inverse.

        :raises DivisionByZero: If this is the zero element.
        """
        return self._wrap(self._ctx.r_inv(self._raw))

    def to_json(self) -> str | list[str]:
        """The serialized form: a decimal string for prime fields and the rationals ("num/den"), a list of decimal
        strings (lowest degree first) for extension fields.
        """
        return self._ctx.r_to_json(self._raw)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __int__(self) -> int:
        return self._ctx.r_to_int(self._raw)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._ctx == other._ctx and self._raw == other._raw
        if isinstance(other, int):
            return self._raw == self._ctx.r_from_int(other)
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash((self._ctx, self._raw))

    def __str__(self):
        return self._ctx.r_str(self._raw)

    def __repr__(self):
        return f'Scalar({self._ctx.r_str(self._raw)} in {self._ctx})'

    def __init__(self, ctx: 'FieldCtx', raw: Any):
        self._ctx = ctx
        self._raw = raw
