from functools import lru_cache
from typing import Iterator

import numpy as np


Exponent = tuple[int, ...]


def _exponents(nvars: int, degree: int) -> Iterator[Exponent]:
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _exponents(nvars - 1, degree - first):
            yield (first,) + rest


class MonomialBasis:
    """
    The monomials of a fixed degree in a fixed number of variables, in graded-lexicographic order with x_0 largest:
    within the degree, exponent vectors are sorted in decreasing lexicographic order, so x_0^d comes first and
    x_{n-1}^d last. Obtain instances with :func:`monomial_basis`, which caches them.

    :param int nvars: The number of variables.
    :param int degree: The degree; a negative degree gives the empty basis.
    """

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def exponents(self) -> list[Exponent]:
        return self._exps

    @property
    def array(self) -> np.ndarray:
        """The exponents as a (len x nvars) int64 array.
        """
        return self._arr

    def index(self, exponent: Exponent) -> int:
        return self._index[exponent]

    def shift_indices(self, alpha: Exponent, target: 'MonomialBasis') -> np.ndarray:
        """For each monomial x^beta of this basis, the index of x^(alpha + beta) in target.
        """
        return np.array([target._index[tuple(a + b for a, b in zip(alpha, beta))] for beta in self._exps],
                        dtype=np.int64)

    def __len__(self) -> int:
        return len(self._exps)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self._exps)

    def __repr__(self):
        return f'MonomialBasis(nvars={self._nvars}, degree={self._degree}, size={len(self)})'

    def __init__(self, nvars: int, degree: int):
        self._nvars = nvars
        self._degree = degree
        self._exps = list(_exponents(nvars, degree)) if degree >= 0 and nvars > 0 else []
        self._index = {e: i for i, e in enumerate(self._exps)}
        self._arr = np.array(self._exps, dtype=np.int64).reshape(len(self._exps), nvars)


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> MonomialBasis:
    return MonomialBasis(nvars, degree)
