import logging
from typing import Any, Iterable, Optional, Union

import numpy as np

from .FieldCtx import FieldCtx
from .Scalar import Scalar
from ..Palatini import ZERO_POLY_DEGREE
from ..PalatiniError import DivisionByZero, FieldMismatch, RangeError, WrongFieldKind


logger = logging.getLogger(__name__)


class UniPoly:
    """
    A univariate polynomial over an exact field, with dense coefficients stored lowest degree first. The stored
    coefficient list is always trimmed, so the zero polynomial has no coefficients and degree
    :data:`~pyPalatini.Palatini.Palatini.ZERO_POLY_DEGREE`.

    :param FieldCtx ctx: The coefficient field.
    :param Iterable coeffs: Coefficients, lowest degree first, as Scalars of ctx or values ctx can coerce.
    """

    @classmethod
    def from_raw(cls, ctx: FieldCtx, raw: list[Any]) -> 'UniPoly':
        poly = cls.__new__(cls)
        poly._ctx = ctx
        poly._c = raw
        poly._trim()
        return poly

    @classmethod
    def x(cls, ctx: FieldCtx) -> 'UniPoly':
        return cls.from_raw(ctx, [ctx.r_zero(), ctx.r_one()])

    @classmethod
    def constant(cls, ctx: FieldCtx, value: Any) -> 'UniPoly':
        return cls.from_raw(ctx, [ctx(value).raw])

    @property
    def ctx(self) -> FieldCtx:
        return self._ctx

    @property
    def raw(self) -> list[Any]:
        return self._c

    @property
    def degree(self) -> Union[int, float]:
        return len(self._c) - 1 if self._c else ZERO_POLY_DEGREE

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def coeffs(self) -> list[Scalar]:
        return [Scalar(self._ctx, c) for c in self._c]

    @property
    def leading(self) -> Scalar:
        return Scalar(self._ctx, self._c[-1]) if self._c else self._ctx.zero

    def _trim(self):
        is_zero = self._ctx.r_is_zero
        while self._c and is_zero(self._c[-1]):
            self._c.pop()

    def _other(self, other) -> 'UniPoly':
        if isinstance(other, UniPoly):
            if other._ctx != self._ctx:
                raise FieldMismatch(f'Cannot combine polynomials over {self._ctx} and {other._ctx}.')
            return other
        if isinstance(other, (Scalar, int)):
            return UniPoly.from_raw(self._ctx, [self._ctx(other).raw])
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        ctx = self._ctx
        a, b = (self._c, o._c) if len(self._c) >= len(o._c) else (o._c, self._c)
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ctx.r_add(out[i], c)
        return UniPoly.from_raw(ctx, out)

    __radd__ = __add__

    def __neg__(self) -> 'UniPoly':
        return UniPoly.from_raw(self._ctx, [self._ctx.r_neg(c) for c in self._c])

    def __sub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        ctx = self._ctx
        if not self._c or not o._c:
            return UniPoly.from_raw(ctx, [])
        out = [ctx.r_zero()] * (len(self._c) + len(o._c) - 1)
        for i, x in enumerate(self._c):
            if ctx.r_is_zero(x):
                continue
            for j, y in enumerate(o._c):
                out[i + j] = ctx.r_add(out[i + j], ctx.r_mul(x, y))
        return UniPoly.from_raw(ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other) -> tuple['UniPoly', 'UniPoly']:
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            raise DivisionByZero('Polynomial division by the zero polynomial.')
        ctx = self._ctx
        r = list(self._c)
        db = len(o._c) - 1
        if len(r) <= db:
            return UniPoly.from_raw(ctx, []), UniPoly.from_raw(ctx, r)
        inv_lead = ctx.r_inv(o._c[-1])
        q = [ctx.r_zero()] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if ctx.r_is_zero(c):
                continue
            c = ctx.r_mul(c, inv_lead)
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = ctx.r_sub(r[i - db + j], ctx.r_mul(c, o._c[j]))
        return UniPoly.from_raw(ctx, q), UniPoly.from_raw(ctx, r[:db])

    def __floordiv__(self, other) -> 'UniPoly':
        return divmod(self, other)[0]

    def __mod__(self, other) -> 'UniPoly':
        return divmod(self, other)[1]

    def exact_div(self, other: 'UniPoly') -> 'UniPoly':
        """Quotient of a division known to be exact.

        :raises ValueError: If the remainder is nonzero.
        """
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError('Polynomial division is not exact.')
        return q

    def monic(self) -> 'UniPoly':
        if self.is_zero:
            return self
        inv = self._ctx.r_inv(self._c[-1])
        return UniPoly.from_raw(self._ctx, [self._ctx.r_mul(c, inv) for c in self._c])

    def derivative(self) -> 'UniPoly':
        ctx = self._ctx
        return UniPoly.from_raw(ctx, [ctx.r_mul(ctx.r_from_int(i), c) for i, c in enumerate(self._c) if i > 0])

    def powmod(self, n: int, modulus: 'UniPoly') -> 'UniPoly':
        """self^n reduced modulo a nonzero polynomial.
        """
        result = UniPoly.from_raw(self._ctx, [self._ctx.r_one()]) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            n >>= 1
            if n:
                base = (base * base) % modulus
        return result

    def gcd(self, other: 'UniPoly') -> 'UniPoly':
        """Monic greatest common divisor; the gcd of two zero polynomials is zero.
        """
        a, b = self, self._other(other)
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x: Any) -> Scalar:
        """Evaluate at a point, by Horner's rule.
        """
        ctx = self._ctx
        xr = ctx(x).raw
        acc = ctx.r_zero()
        for c in reversed(self._c):
            acc = ctx.r_add(ctx.r_mul(acc, xr), c)
        return Scalar(ctx, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._ctx == other._ctx and self._c == other._c

    def __hash__(self):
        return hash((self._ctx, tuple(self._c)))

    def __str__(self):
        if not self._c:
            return '0'
        terms = []
        for i, c in reversed(list(enumerate(self._c))):
            if self._ctx.r_is_zero(c):
                continue
            s = self._ctx.r_str(c)
            terms.append(s if i == 0 else f'{s}*t' if i == 1 else f'{s}*t^{i}')
        return ' + '.join(terms)

    def __repr__(self):
        return f'UniPoly({self} over {self._ctx})'

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[Any] = ()):
        self._ctx = ctx
        self._c = [ctx(c).raw for c in coeffs]
        self._trim()


def _split_linear(g: UniPoly, rng: np.random.Generator) -> list[Scalar]:
    """All roots of a monic polynomial that is a product of distinct linear factors, by equal-degree splitting.
    """
    ctx = g.ctx
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [-(g.coeffs[0] / g.coeffs[1])]
    q = ctx.order
    x = UniPoly.x(ctx)
    while True:
        a = ctx.random(rng)
        if ctx.p == 2:
            # absolute trace of a*x, which takes only the values 0 and 1 on the roots
            term = (x * UniPoly.constant(ctx, a)) % g
            w = term
            for _ in range(ctx.e - 1):
                term = (term * term) % g
                w = w + term
        else:
            w = (x + UniPoly.constant(ctx, a)).powmod((q - 1) // 2, g) - 1
        d = g.gcd(w)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g.exact_div(d).monic(), rng)


def poly_roots(f: UniPoly, seed: Optional[int] = 0) -> list[Scalar]:
    """The distinct roots of a nonzero polynomial over a finite field, sorted by the field's element order.

    The roots lying in F_q are isolated by gcd(f, x^q - x) and separated with seeded Cantor-Zassenhaus splitting, so
    the result is deterministic for a given seed.

    :param UniPoly f: A nonzero polynomial over a finite field.
    :param Optional[int] seed: Seed of the splitting randomness.
    :return: The distinct roots.
    :rtype: list[Scalar]
    :raises WrongFieldKind: Over Q.
    :raises RangeError: For the zero polynomial, whose root set is the whole field.
    """
    ctx = f.ctx
    if not ctx.is_finite:
        raise WrongFieldKind('Root finding is only supported over finite fields.')
    if f.is_zero:
        raise RangeError('The zero polynomial vanishes everywhere.')
    if f.degree < 1:
        return []
    f = f.monic()
    x = UniPoly.x(ctx)
    g = f.gcd(x.powmod(ctx.order, f) - x)
    roots = _split_linear(g, np.random.default_rng(seed))
    return sorted(roots, key=lambda r: ctx.sort_key(r.raw))
