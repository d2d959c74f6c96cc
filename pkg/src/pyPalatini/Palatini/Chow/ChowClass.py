from typing import Iterable, Union

from ..PalatiniError import DimensionMismatch, RangeError


class ChowClass:
    """
    A class in the Chow ring of projective space P^n, which is Z[h] / (h^(n+1)): the integer polynomial
    ``sum_i coeffs[i] * h^i`` truncated above degree n. Arithmetic is exact, on Python integers.

    :param int n: The dimension of the ambient projective space.
    :param Iterable[int] coeffs: Coefficients c_0, c_1, ...; entries past degree n are dropped, missing ones are zero.
    """

    @classmethod
    def hyperplane(cls, n: int) -> 'ChowClass':
        """The hyperplane class h.
        """
        return cls(n, [0, 1])

    @classmethod
    def unit(cls, n: int) -> 'ChowClass':
        return cls(n, [1])

    @property
    def n(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def __getitem__(self, i: int) -> int:
        """The coefficient of h^i; zero above n.
        """
        return self._c[i] if 0 <= i <= self._n else 0

    def _check(self, other: 'ChowClass'):
        if other._n != self._n:
            raise DimensionMismatch(f'Chow classes of P^{self._n} and P^{other._n} cannot be combined.')

    def __add__(self, other: Union['ChowClass', int]) -> 'ChowClass':
        if isinstance(other, int):
            other = ChowClass(self._n, [other])
        self._check(other)
        return ChowClass(self._n, [a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self) -> 'ChowClass':
        return ChowClass(self._n, [-a for a in self._c])

    def __sub__(self, other: Union['ChowClass', int]) -> 'ChowClass':
        return self + (-other)

    def __mul__(self, other: Union['ChowClass', int]) -> 'ChowClass':
        if isinstance(other, int):
            return ChowClass(self._n, [other * a for a in self._c])
        self._check(other)
        out = [0] * (self._n + 1)
        for i, a in enumerate(self._c):
            if a:
                for j in range(self._n + 1 - i):
                    out[i + j] += a * other._c[j]
        return ChowClass(self._n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> 'ChowClass':
        if e < 0:
            return self.inverse() ** -e
        result = ChowClass.unit(self._n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> 'ChowClass':
        """The multiplicative inverse of a class with constant term +1 or -1, built term by term from
        b_j = -c_0 * sum_{i=1..j} c_i * b_{j-i}, which stays in the integers. For 1 + 2h this is the truncated
        geometric series sum_i (-2h)^i.

        :raises RangeError: If the constant term is not a unit of Z.
        """
        c0 = self._c[0]
        if c0 not in (1, -1):
            raise RangeError(f'A Chow class with constant term {c0} is not invertible over Z.')
        b = [c0] + [0] * self._n
        for j in range(1, self._n + 1):
            b[j] = -c0 * sum(self._c[i] * b[j - i] for i in range(1, j + 1))
        return ChowClass(self._n, b)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ChowClass(self._n, [other])
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self._n == other._n and self._c == other._c

    def __hash__(self):
        return hash((self._n, self._c))

    def __str__(self):
        terms = [f'{c}' if i == 0 else f'{c}h' if i == 1 else f'{c}h^{i}' for i, c in enumerate(self._c) if c]
        return ' + '.join(terms) if terms else '0'

    def __repr__(self):
        return f'ChowClass(P^{self._n}: {self})'

    def __init__(self, n: int, coeffs: Iterable[int] = ()):
        if n < 0:
            raise RangeError(f'Projective dimension must be non-negative, got {n}.')
        c = [int(a) for a in coeffs][:n + 1]
        self._n = n
        self._c = tuple(c + [0] * (n + 1 - len(c)))
