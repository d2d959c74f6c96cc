import numpy as np

from ..Linalg.ModularEchelon import ModularEchelon
from ..Polynomials.MonomialBasis import MonomialBasis


class GradedPiece:
    """
    The degree-d piece of the ideal I generated by the maximal minors, inside S_d, the forms of degree d in 2k
    variables.

    The span of the generator multiples is held in reduced row echelon form on the monomial basis of S_d. Its free
    columns are the monomials chosen as representatives of (S/I)_d, picked greedily in graded-lex order, and the
    residual of a form against the echelon rows is its normal form in those coordinates.

    :param int degree: The degree d.
    :param MonomialBasis basis: The monomial basis of S_d.
    :param ModularEchelon echelon: The echelon form of I_d.
    :param int generator_rows: The number of products x^alpha * g_J that were reduced.
    """

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def basis(self) -> MonomialBasis:
        return self._basis

    @property
    def ideal_subspace(self) -> ModularEchelon:
        return self._echelon

    @property
    def generator_rows(self) -> int:
        return self._generator_rows

    @property
    def ideal_dim(self) -> int:
        return self._echelon.rank

    @property
    def quotient_dim(self) -> int:
        return self._echelon.nullity

    @property
    def representatives(self) -> np.ndarray:
        """Indices into the basis of the monomials spanning the quotient, ascending.
        """
        return self._echelon.free_columns

    def normal_form(self, block: np.ndarray) -> np.ndarray:
        """Quotient coordinates of forms given as rows of coefficients on the basis.
        """
        return self._echelon.reduce(block)

    def monomial_normal_forms(self, indices: np.ndarray) -> np.ndarray:
        """Quotient coordinates of the monomials with the given basis indices.
        """
        return self._echelon.express_columns(indices)

    def __repr__(self):
        return f'GradedPiece(d={self._degree}, dim S_d={len(self._basis)}, quotient_dim={self.quotient_dim})'

    def __init__(self, degree: int, basis: MonomialBasis, echelon: ModularEchelon, generator_rows: int):
        self._degree = degree
        self._basis = basis
        self._echelon = echelon
        self._generator_rows = generator_rows
