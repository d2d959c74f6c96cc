import logging
from abc import ABC, abstractmethod
from functools import cached_property
from fractions import Fraction
from typing import Any, Iterator, Optional

import numpy as np
from sympy import isprime

from . import fpx
from .Scalar import Scalar
from ..Palatini import FieldKind, IRREDUCIBLE_SEARCH_TRIALS, MAX_PRIME
from ..PalatiniError import (
    DivisionByZero, FieldMismatch, IrreducibleSearchExhausted, NonPrimeModulus, RangeError, WrongFieldKind,
)


logger = logging.getLogger(__name__)


class FieldCtx(ABC):
    """
    Abstract context of an exact field: the prime fields F_p, the extension fields F_{p^e} and the rationals Q.

    A context owns all arithmetic on raw element representations (the ``r_*`` methods); user code normally works
    with :class:`~pyPalatini.Palatini.Fields.Scalar.Scalar` values obtained by calling the context, e.g.
    ``ctx(5)``. Contexts compare equal when they describe the same field with the same modulus, and are hashable.

    Construct contexts with :func:`FieldCtx.prime`, :func:`FieldCtx.extension_of` or :func:`FieldCtx.rational`.

    :var FieldKind kind: The kind of field.
    :var Optional[int] p: The characteristic, or None for Q.
    :var int e: The extension degree over the prime field; 1 for prime fields and Q.
    """

    kind: FieldKind
    p: Optional[int]
    e: int

    # Construction

    @staticmethod
    def prime(p: int) -> 'PrimeFieldCtx':
        """The prime field F_p.

        :param int p: A prime, 2 <= p < 2^31.
        :raises NonPrimeModulus: If p is not a prime in range.
        """
        return PrimeFieldCtx(p)

    @staticmethod
    def extension_of(p: int, e: int, seed: int = 0) -> 'FieldCtx':
        """The field F_{p^e}, with its modulus found by a seeded search for a monic irreducible polynomial of degree e.
        For e == 1 this is the prime field.

        :param int p: A prime, 2 <= p < 2^31.
        :param int e: The extension degree, at least 1.
        :param int seed: Seed of the modulus search; the same seed always produces the same modulus.
        :raises NonPrimeModulus: If p is not a prime in range.
        :raises IrreducibleSearchExhausted: If the search budget is spent.
        """
        if e < 1:
            raise RangeError(f'Extension degree must be at least 1, got {e}.')
        base = PrimeFieldCtx(p)
        return base if e == 1 else base.extension(e, seed)

    @staticmethod
    def rational() -> 'RationalFieldCtx':
        """The rational numbers Q, with exact fraction arithmetic.
        """
        return RationalFieldCtx()

    @staticmethod
    def from_json(obj: dict) -> 'FieldCtx':
        """Rebuild a context from :attr:`json`.
        """
        kind = FieldKind(obj.get('kind', FieldKind.PRIME.value))
        if kind == FieldKind.RATIONAL:
            return RationalFieldCtx()
        p = int(obj['p'])
        e = int(obj.get('e', 1))
        if e == 1:
            return PrimeFieldCtx(p)
        if 'modulus' in obj:
            return ExtensionFieldCtx(p, tuple(int(c) for c in obj['modulus']))
        return FieldCtx.extension_of(p, e, int(obj.get('seed', 0)))

    # Properties

    @property
    def order(self) -> Optional[int]:
        """The number of elements, or None for Q.
        """
        return None if self.p is None else self.p ** self.e

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def zero(self) -> Scalar:
        return Scalar(self, self.r_zero())

    @property
    def one(self) -> Scalar:
        return Scalar(self, self.r_one())

    @property
    @abstractmethod
    def json(self) -> dict:
        """A JSON-serializable description of the field, including the modulus of an extension field.
        """
        raise NotImplementedError

    # Scalar-level helpers

    def __call__(self, value: Any) -> Scalar:
        """Coerce an int, a Fraction, a serialized value or a Scalar of this field (or of its prime subfield) to a
        Scalar of this field.
        """
        if isinstance(value, Scalar):
            return Scalar(self, self.coerce_raw(value.ctx, value.raw))
        return Scalar(self, self.r_from_value(value))

    def random(self, rng: np.random.Generator) -> Scalar:
        return Scalar(self, self.r_random(rng))

    def random_nonzero(self, rng: np.random.Generator) -> Scalar:
        while True:
            raw = self.r_random(rng)
            if not self.r_is_zero(raw):
                return Scalar(self, raw)

    def elements(self) -> Iterator[Scalar]:
        """Enumerate every element of a finite field, zero first, in a fixed order.

        :raises WrongFieldKind: For Q.
        """
        if not self.is_finite:
            raise WrongFieldKind('The rationals cannot be enumerated.')
        for i in range(self.order):
            yield Scalar(self, self.r_element(i))

    def element(self, index: int) -> Scalar:
        """The element at the given position of :func:`elements`; for Q, the integer ``index``.
        """
        return Scalar(self, self.r_element(index))

    def coerce_raw(self, other: 'FieldCtx', raw: Any) -> Any:
        """Map a raw value of another context into this one. Only identity and the embedding of the prime subfield
        are supported.

        :raises FieldMismatch: If other is neither this field nor its prime subfield.
        """
        if other == self:
            return raw
        if isinstance(other, PrimeFieldCtx) and other.p == self.p:
            return self.r_from_int(raw)
        raise FieldMismatch(f'Cannot map elements of {other} into {self}.')

    def sort_key(self, raw: Any) -> Any:
        return raw

    # Raw arithmetic

    @abstractmethod
    def r_zero(self) -> Any: ...

    @abstractmethod
    def r_one(self) -> Any: ...

    @abstractmethod
    def r_from_int(self, n: int) -> Any: ...

    @abstractmethod
    def r_from_value(self, value: Any) -> Any: ...

    @abstractmethod
    def r_add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def r_sub(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def r_neg(self, a: Any) -> Any: ...

    @abstractmethod
    def r_mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def r_inv(self, a: Any) -> Any: ...

    @abstractmethod
    def r_random(self, rng: np.random.Generator) -> Any: ...

    @abstractmethod
    def r_element(self, index: int) -> Any: ...

    @abstractmethod
    def r_to_json(self, a: Any) -> Any: ...

    @abstractmethod
    def r_to_int(self, a: Any) -> int: ...

    def r_is_zero(self, a: Any) -> bool:
        return a == self.r_zero()

    def r_pow(self, a: Any, n: int) -> Any:
        if n < 0:
            a, n = self.r_inv(a), -n
        result = self.r_one()
        while n:
            if n & 1:
                result = self.r_mul(result, a)
            n >>= 1
            if n:
                a = self.r_mul(a, a)
        return result

    def r_str(self, a: Any) -> str:
        return str(a)

    def _key(self) -> tuple:
        return self.kind, self.p, self.e

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self):
        return self.__str__()


class PrimeFieldCtx(FieldCtx):
    """
    The prime field F_p, with elements represented as ints in [0, p).

    :param int p: A prime, 2 <= p < 2^31.
    :raises NonPrimeModulus: If p is not a prime in range.
    """

    kind = FieldKind.PRIME

    @property
    def json(self) -> dict:
        return {'kind': self.kind.value, 'p': self.p, 'e': 1}

    def extension(self, e: int, seed: int = 0) -> FieldCtx:
        """The extension F_{p^e} of this field. The modulus is a monic irreducible polynomial of degree e, found by
        trying seeded random candidates; the same seed always yields the same modulus.

        :raises IrreducibleSearchExhausted: If no irreducible candidate is found within the search budget.
        """
        if e < 1:
            raise RangeError(f'Extension degree must be at least 1, got {e}.')
        if e == 1:
            return self
        rng = np.random.default_rng(seed)
        p = self.p
        for trial in range(IRREDUCIBLE_SEARCH_TRIALS):
            coeffs = [int(c) for c in rng.integers(0, p, size=e)]
            if coeffs[0] == 0:
                continue
            f = coeffs + [1]
            if fpx.is_irreducible(f, p):
                logger.debug('Found irreducible modulus of degree %d over F_%d after %d trials', e, p, trial + 1)
                return ExtensionFieldCtx(p, tuple(f))
        raise IrreducibleSearchExhausted(
            f'No irreducible polynomial of degree {e} over F_{p} found in {IRREDUCIBLE_SEARCH_TRIALS} trials.'
        )

    def r_zero(self) -> int:
        return 0

    def r_one(self) -> int:
        return 1

    def r_from_int(self, n: int) -> int:
        return int(n) % self.p

    def r_from_value(self, value: Any) -> int:
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        if isinstance(value, str):
            return int(value) % self.p
        if isinstance(value, Fraction):
            return self.r_mul(value.numerator % self.p, self.r_inv(value.denominator % self.p))
        raise TypeError(f'Cannot interpret {value!r} as an element of {self}.')

    def r_add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def r_sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def r_neg(self, a: int) -> int:
        return -a % self.p

    def r_mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def r_inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f'Zero has no inverse in {self}.')
        return pow(a, -1, self.p)

    def r_pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.r_inv(a), -n
        return pow(a, n, self.p)

    def r_random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.p))

    def r_element(self, index: int) -> int:
        return index % self.p

    def r_to_json(self, a: int) -> str:
        return str(a)

    def r_to_int(self, a: int) -> int:
        return a

    def __str__(self):
        return f'F_{self.p}'

    def __init__(self, p: int):
        if not isinstance(p, (int, np.integer)) or not 2 <= p < MAX_PRIME or not isprime(int(p)):
            raise NonPrimeModulus(f'The modulus must be a prime below 2^31, got {p}.')
        self.p = int(p)
        self.e = 1


class ExtensionFieldCtx(FieldCtx):
    """
    The finite field F_{p^e} = F_p[x]/(f) for a monic irreducible f of degree e >= 2. Elements are tuples of e
    residues, lowest degree first.

    :param int p: The characteristic.
    :param tuple[int, ...] modulus: Coefficients of f, lowest degree first, with leading coefficient 1.
    :param subfield: An intermediate field this one was built over, with the raw image of its generator; elements
        of that field then coerce into this one and descend back.
    :raises NonPrimeModulus: If p is not a prime in range.
    :raises RangeError: If the modulus is not monic of degree at least 2, or is reducible.
    """

    kind = FieldKind.EXTENSION

    @property
    def modulus(self) -> tuple[int, ...]:
        return self._modulus

    @property
    def subfield(self) -> Optional['ExtensionFieldCtx']:
        return None if self._subfield is None else self._subfield[0]

    @property
    def json(self) -> dict:
        return {'kind': self.kind.value, 'p': self.p, 'e': self.e, 'modulus': list(self._modulus)}

    def extension(self, j: int, seed: int = 0) -> 'ExtensionFieldCtx':
        """The extension F_{p^(e*j)} of this field. Its modulus comes from the seeded search over F_p; this field is
        embedded by sending its generator to the first root of its modulus there.

        :raises IrreducibleSearchExhausted: If no irreducible modulus of degree e*j is found.
        """
        from .UniPoly import UniPoly, poly_roots

        if j < 1:
            raise RangeError(f'Extension degree must be at least 1, got {j}.')
        if j == 1:
            return self
        big = PrimeFieldCtx(self.p).extension(self.e * j, seed)
        roots = poly_roots(UniPoly.from_raw(big, [big.r_from_int(c) for c in self._modulus]))
        if not roots:
            raise FieldMismatch(f'The modulus of {self} has no root in {big}.')
        logger.debug('Embedding %s into %s at %s', self, big, roots[0])
        return ExtensionFieldCtx(self.p, big.modulus, subfield=(self, roots[0].raw))

    def coerce_raw(self, other: FieldCtx, raw: Any) -> Any:
        if self._subfield is not None and other == self._subfield[0]:
            return self._embed(raw)
        return super().coerce_raw(other, raw)

    def _embed(self, a) -> tuple[int, ...]:
        alpha = self._subfield[1]
        acc = self._zero
        for c in reversed(a):
            acc = self.r_add(self.r_mul(acc, alpha), self.r_from_int(c))
        return acc

    @cached_property
    def _preimages(self) -> dict:
        sub = self._subfield[0]
        return {self._embed(x): x for x in (sub.r_element(i) for i in range(sub.order))}

    def descend_to(self, sub: FieldCtx, a) -> Any:
        """Map an element lying in a subfield back to that subfield's raw value. The subfield is the prime field or
        the field this one was built over with :func:`extension`.

        :raises FieldMismatch: If sub is neither.
        :raises WrongFieldKind: If the element does not lie in sub.
        """
        if isinstance(sub, PrimeFieldCtx) and sub.p == self.p:
            return self.descend(a)
        if self._subfield is None or sub != self._subfield[0]:
            raise FieldMismatch(f'{sub} is not a registered subfield of {self}.')
        try:
            return self._preimages[a]
        except KeyError:
            raise WrongFieldKind(f'{self.r_str(a)} does not lie in the subfield {sub} of {self}.') from None

    def r_zero(self) -> tuple[int, ...]:
        return self._zero

    def r_one(self) -> tuple[int, ...]:
        return self._one

    def r_from_int(self, n: int) -> tuple[int, ...]:
        return (int(n) % self.p,) + (0,) * (self.e - 1)

    def r_from_value(self, value: Any) -> tuple[int, ...]:
        if isinstance(value, (int, np.integer, str)):
            return self.r_from_int(int(value))
        if isinstance(value, (list, tuple)):
            if len(value) > self.e:
                raise ValueError(f'Too many coefficients for an element of {self}: {value!r}.')
            coeffs = [int(c) % self.p for c in value]
            return tuple(coeffs + [0] * (self.e - len(coeffs)))
        raise TypeError(f'Cannot interpret {value!r} as an element of {self}.')

    def r_add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def r_sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def r_neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def r_mul(self, a, b):
        p, e, f = self.p, self.e, self._modulus
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(e):
                    prod[i - e + j] -= c * f[j]
        return tuple(c % p for c in prod[:e])

    def r_inv(self, a):
        if not any(a):
            raise DivisionByZero(f'Zero has no inverse in {self}.')
        inv = fpx.inverse_mod(fpx.trim(list(a)), list(self._modulus), self.p)
        return tuple(inv + [0] * (self.e - len(inv)))

    def r_is_zero(self, a) -> bool:
        return not any(a)

    def r_random(self, rng: np.random.Generator):
        return tuple(int(c) for c in rng.integers(0, self.p, size=self.e))

    def r_element(self, index: int):
        digits = []
        index %= self.order
        for _ in range(self.e):
            index, d = divmod(index, self.p)
            digits.append(d)
        return tuple(digits)

    def r_to_json(self, a) -> list[str]:
        return [str(c) for c in a]

    def r_to_int(self, a) -> int:
        return self.descend(a)

    def descend(self, a) -> int:
        """Map an element of the prime subfield back to its residue.

        :raises WrongFieldKind: If the element does not lie in the prime subfield.
        """
        if any(a[1:]):
            raise WrongFieldKind(f'{self.r_str(a)} does not lie in the prime subfield of {self}.')
        return a[0]

    def sort_key(self, a):
        return tuple(reversed(a))

    def r_str(self, a) -> str:
        return '[' + ','.join(str(c) for c in a) + ']'

    def _key(self) -> tuple:
        return self.kind, self.p, self.e, self._modulus

    def __str__(self):
        return f'F_{self.p}^{self.e}'

    def __init__(self, p: int, modulus: tuple[int, ...], subfield: Optional[tuple[FieldCtx, tuple]] = None):
        if not 2 <= p < MAX_PRIME or not isprime(p):
            raise NonPrimeModulus(f'The characteristic must be a prime below 2^31, got {p}.')
        if len(modulus) < 3 or modulus[-1] != 1:
            raise RangeError(f'An extension modulus must be monic of degree at least 2, got {modulus}.')
        if not fpx.is_irreducible([c % p for c in modulus], p):
            raise RangeError(f'The modulus {modulus} is reducible over F_{p}.')
        self.p = p
        self.e = len(modulus) - 1
        self._modulus = tuple(c % p for c in modulus)
        self._zero = (0,) * self.e
        self._one = (1,) + (0,) * (self.e - 1)
        self._subfield = subfield


class RationalFieldCtx(FieldCtx):
    """
    The rational numbers, with elements represented as :class:`fractions.Fraction`. Used for exact cross-checks of
    the degree formulas and for small symbolic computations.
    """

    kind = FieldKind.RATIONAL

    @property
    def json(self) -> dict:
        return {'kind': self.kind.value}

    def r_zero(self) -> Fraction:
        return Fraction(0)

    def r_one(self) -> Fraction:
        return Fraction(1)

    def r_from_int(self, n: int) -> Fraction:
        return Fraction(int(n))

    def r_from_value(self, value: Any) -> Fraction:
        if isinstance(value, (int, np.integer, Fraction, str)):
            return Fraction(value if not isinstance(value, np.integer) else int(value))
        raise TypeError(f'Cannot interpret {value!r} as a rational number.')

    def r_add(self, a, b):
        return a + b

    def r_sub(self, a, b):
        return a - b

    def r_neg(self, a):
        return -a

    def r_mul(self, a, b):
        return a * b

    def r_inv(self, a):
        if a == 0:
            raise DivisionByZero('Zero has no inverse in Q.')
        return 1 / a

    def r_random(self, rng: np.random.Generator) -> Fraction:
        return Fraction(int(rng.integers(-16, 17)), int(rng.integers(1, 17)))

    def r_element(self, index: int) -> Fraction:
        return Fraction(index)

    def r_to_json(self, a: Fraction) -> str:
        return f'{a.numerator}/{a.denominator}'

    def r_to_int(self, a: Fraction) -> int:
        if a.denominator != 1:
            raise ValueError(f'{a} is not an integer.')
        return a.numerator

    def __str__(self):
        return 'Q'

    def __init__(self):
        self.p = None
        self.e = 1
