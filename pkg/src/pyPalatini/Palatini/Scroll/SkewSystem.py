import logging
from typing import Sequence

from ..Fields.FieldCtx import FieldCtx
from ..Linalg.Matrix import Matrix
from ..PalatiniError import FieldMismatch, NotSkewSymmetric, RangeError, ShapeError


logger = logging.getLogger(__name__)


class SkewSystem:
    """
    An m-dimensional system of skew-symmetric forms on a vector space V of even dimension 2k: the matrices
    A^1, ..., A^m, with entries a_{i,j}^l, of a map U -> (wedge^2 V)*.

    The matrices need not be linearly independent, so that degenerate systems can be represented; whether they are
    is reported by :attr:`is_injective`.

    :param FieldCtx ctx: The field of the entries.
    :param Sequence[Matrix] matrices: The m matrices, each 2k x 2k, skew-symmetric with zero diagonal.
    :raises ShapeError: If the matrices are not square of one even size.
    :raises NotSkewSymmetric: If a matrix is not skew-symmetric.
    :raises FieldMismatch: If a matrix is over another field.
    :raises RangeError: Unless m >= 1 and 2k >= m + 1.
    """

    @property
    def ctx(self) -> FieldCtx:
        return self._ctx

    @property
    def m(self) -> int:
        return len(self._mats)

    @property
    def n(self) -> int:
        """The dimension 2k of V.
        """
        return self._n

    @property
    def k(self) -> int:
        return self._n // 2

    @property
    def matrices(self) -> list[Matrix]:
        return self._mats

    def entry(self, l: int, i: int, j: int) -> object:
        """The raw entry a_{i,j}^l, 0-indexed.
        """
        return self._raw[l][i][j]

    @property
    def raw(self) -> list[list[list]]:
        """The raw entries, indexed [l][i][j].
        """
        return self._raw

    def f_phi_matrix(self) -> Matrix:
        """The 2km x 2k matrix stacking the A^l, which represents v -> (A^l v)_l. It has rank 2k exactly when that map
        is injective.
        """
        rows = [row for l in range(self.m) for row in self._raw[l]]
        return Matrix.from_raw(self._ctx, [list(r) for r in rows], self._n)

    def f_phi_rank(self) -> int:
        return self.f_phi_matrix().rank()

    def common_kernel(self) -> Matrix:
        """A basis (as columns) of the vectors killed by every A^l.
        """
        return self.f_phi_matrix().kernel_basis()

    @property
    def is_injective(self) -> bool:
        """Whether the A^l are linearly independent, i.e. the map from U to skew forms is injective.
        """
        flat = [[v for row in self._raw[l] for v in row] for l in range(self.m)]
        return Matrix.from_raw(self._ctx, flat, self._n * self._n).rank() == self.m

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewSystem) and self._ctx == other._ctx and self._raw == other._raw

    def __repr__(self):
        return f'SkewSystem(m={self.m}, k={self.k}, over {self._ctx})'

    def __init__(self, ctx: FieldCtx, matrices: Sequence[Matrix]):
        if not matrices:
            raise RangeError('A skew system needs at least one matrix.')
        n = matrices[0].rows
        for l, a in enumerate(matrices):
            if a.ctx != ctx:
                raise FieldMismatch(f'Matrix {l + 1} is over {a.ctx}, expected {ctx}.')
            if a.rows != a.cols or a.rows != n or n % 2:
                raise ShapeError(f'Matrix {l + 1} has shape {a.shape}; every matrix must be {n}x{n} with {n} even.')
            if not a.is_skew():
                raise NotSkewSymmetric(f'Matrix {l + 1} is not skew-symmetric with zero diagonal.')
        if n < len(matrices) + 1:
            raise RangeError(f'Need 2k >= m + 1, got 2k={n}, m={len(matrices)}.')
        self._ctx = ctx
        self._n = n
        self._mats = list(matrices)
        self._raw = [a.raw_rows() for a in self._mats]
