from typing import Sequence

import numpy as np

from ..Fields.FieldCtx import FieldCtx
from ..Polynomials.MonomialBasis import MonomialBasis
from ..Polynomials.MultiPoly import MultiPoly


class SyzygyBasis:
    """
    A basis of the relations of degree d among the maximal minors: tuples (f_J) of forms of degree d - m with
    sum_J f_J g_J = 0.

    Relations are stored as the rows of an array; row i holds f_0, f_1, ... one after the other, each as its
    coefficient vector on the monomial basis of degree d - m.

    :param FieldCtx ctx: The prime field.
    :param int degree: The degree d.
    :param int generator_count: The number of minors.
    :param MonomialBasis basis: The monomial basis of degree d - m.
    :param np.ndarray relations: A (count x generator_count * len(basis)) array.
    """

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generator_count(self) -> int:
        return self._generator_count

    @property
    def basis(self) -> MonomialBasis:
        return self._basis

    @property
    def relations(self) -> np.ndarray:
        return self._relations

    def coefficient_blocks(self, rows: slice = slice(None)) -> np.ndarray:
        """The selected relations as a (count x generator_count x len(basis)) array.
        """
        sel = self._relations[rows]
        return sel.reshape(sel.shape[0], self._generator_count, len(self._basis))

    def relation(self, i: int) -> list[MultiPoly]:
        """The coefficient forms (f_J) of relation i.
        """
        return [MultiPoly.from_vector(self._ctx, self._basis, [int(x) for x in row])
                for row in self.coefficient_blocks(slice(i, i + 1))[0]]

    def expand(self, i: int, generators: Sequence[MultiPoly]) -> MultiPoly:
        """sum_J f_J g_J for relation i, computed by polynomial arithmetic.
        """
        total = MultiPoly(self._ctx, self._basis.nvars)
        for f, g in zip(self.relation(i), generators):
            if not f.is_zero:
                total = total + f * g
        return total

    def __len__(self):
        return self._relations.shape[0]

    def __repr__(self):
        return f'SyzygyBasis(d={self._degree}, count={len(self)})'

    def __init__(self, ctx: FieldCtx, degree: int, generator_count: int, basis: MonomialBasis,
                 relations: np.ndarray):
        self._ctx = ctx
        self._degree = degree
        self._generator_count = generator_count
        self._basis = basis
        self._relations = relations
