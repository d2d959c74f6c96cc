import logging
from itertools import combinations
from typing import Any, Sequence

import numpy as np

from .MultiPoly import MultiPoly, _lift_point
from .interpolate import interpolate_form
from ..Fields.FieldCtx import FieldCtx, PrimeFieldCtx
from ..Linalg.Matrix import Matrix
from ..PalatiniError import DimensionMismatch, NotSkewSymmetric, ShapeError


logger = logging.getLogger(__name__)


class LinFormMatrix:
    """
    A matrix whose entries are linear forms in a fixed set of variables, stored as a (rows x cols x nvars) array of
    raw coefficients: entry (i, j) is ``sum_l coeffs[i][j][l] * x_l``.

    :param FieldCtx ctx: The coefficient field.
    :param Sequence coeffs: Nested rows x cols x nvars coefficients, as Scalars of ctx or values ctx can coerce.
    """

    @classmethod
    def from_raw(cls, ctx: FieldCtx, coeffs: list[list[list[Any]]], nvars: int) -> 'LinFormMatrix':
        mat = cls.__new__(cls)
        mat._ctx = ctx
        mat._c = coeffs
        mat._nvars = nvars
        mat._arr = None
        if isinstance(ctx, PrimeFieldCtx):
            mat._arr = np.array(coeffs, dtype=np.int64).reshape(len(coeffs), len(coeffs[0]) if coeffs else 0, nvars)
        return mat

    @property
    def ctx(self) -> FieldCtx:
        return self._ctx

    @property
    def rows(self) -> int:
        return len(self._c)

    @property
    def cols(self) -> int:
        return len(self._c[0]) if self._c else 0

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def raw(self) -> list[list[list[Any]]]:
        return self._c

    def entry(self, i: int, j: int) -> MultiPoly:
        return MultiPoly.linear(self._ctx, self._c[i][j])

    def coefficient_matrix(self, var: int) -> Matrix:
        """The constant matrix of coefficients of x_var.
        """
        return Matrix.from_raw(self._ctx, [[cell[var] for cell in row] for row in self._c], self.cols)

    def evaluate(self, point: Sequence[Any]) -> Matrix:
        """The constant matrix obtained by substituting a point, over the field of the point.

        :raises DimensionMismatch: If the point does not have nvars coordinates.
        """
        if len(point) != self._nvars:
            raise DimensionMismatch(f'Point has {len(point)} coordinates, expected {self._nvars}.')
        target, raw = _lift_point(self._ctx, point)
        if self._arr is not None and target == self._ctx:
            vec = np.array(raw, dtype=np.int64)
            out = np.zeros((self.rows, self.cols), dtype=np.int64)
            for v, x in enumerate(vec):
                if x:
                    out = (out + self._arr[:, :, v] * int(x)) % self._ctx.p
            return Matrix.from_array(self._ctx, out)
        out = []
        for row in self._c:
            out_row = []
            for cell in row:
                acc = target.r_zero()
                for c, x in zip(cell, raw):
                    acc = target.r_add(acc, target.r_mul(target.coerce_raw(self._ctx, c), x))
                out_row.append(acc)
            out.append(out_row)
        return Matrix.from_raw(target, out, self.cols)

    def is_skew(self) -> bool:
        """Whether every coefficient matrix is skew-symmetric with zero diagonal.
        """
        return self.rows == self.cols and all(self.coefficient_matrix(v).is_skew() for v in range(self._nvars))

    def symbolic_pfaffian(self) -> MultiPoly:
        """The pfaffian as a form of degree rows / 2, recovered by evaluation and interpolation. An odd number of rows
        gives the zero polynomial.

        :raises ShapeError: If the matrix is not square.
        :raises NotSkewSymmetric: If it is not skew-symmetric.
        """
        if self.rows != self.cols:
            raise ShapeError(f'Pfaffian of a non-square {self.rows}x{self.cols} matrix of forms.')
        if not self.is_skew():
            raise NotSkewSymmetric('Pfaffian of a matrix of linear forms that is not skew-symmetric.')
        if self.rows % 2:
            return MultiPoly(self._ctx, self._nvars)
        return interpolate_form(self._ctx, self._nvars, self.rows // 2, lambda u: self.evaluate(u).pfaffian())

    def symbolic_det(self) -> MultiPoly:
        """The determinant as a form of degree rows, recovered by evaluation and interpolation.
        """
        if self.rows != self.cols:
            raise ShapeError(f'Determinant of a non-square {self.rows}x{self.cols} matrix of forms.')
        return interpolate_form(self._ctx, self._nvars, self.rows, lambda u: self.evaluate(u).det())

    def minors_max(self) -> list[MultiPoly]:
        """All maximal minors of a matrix with rows <= cols, one per set of rows-many columns, in lexicographic order
        of the column sets. Each is a form of degree rows.

        Computed exactly by expansion along the rows, sharing the minors of the leading rows between column sets.
        """
        r, c = self.rows, self.cols
        if r > c:
            raise ShapeError(f'A {r}x{c} matrix has no maximal minors of size {r}.')
        ctx, n = self._ctx, self._nvars
        one = MultiPoly.constant(ctx, n, 1)
        level: dict[tuple[int, ...], MultiPoly] = {(): one}
        for t in range(r):
            forms = [self.entry(t, j) for j in range(c)]
            nxt: dict[tuple[int, ...], MultiPoly] = {}
            for cols in combinations(range(c), t + 1):
                acc = MultiPoly(ctx, n)
                for pos, col in enumerate(cols):
                    sub = cols[:pos] + cols[pos + 1:]
                    term = forms[col] * level[sub]
                    acc = acc - term if (t + pos) % 2 else acc + term
                nxt[cols] = acc
            level = nxt
        minors = [level[cols] for cols in combinations(range(c), r)]
        logger.debug('Computed %d maximal minors of a %dx%d matrix of linear forms', len(minors), r, c)
        return minors

    def __repr__(self):
        return f'LinFormMatrix({self.rows}x{self.cols} in {self._nvars} variables over {self._ctx})'

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[Sequence[Sequence[Any]]]):
        raw = [[[ctx(v).raw for v in cell] for cell in row] for row in coeffs]
        nvars = len(raw[0][0]) if raw and raw[0] else 0
        if any(len(row) != len(raw[0]) for row in raw) or any(len(cell) != nvars for row in raw for cell in row):
            raise DimensionMismatch('Linear-form matrix entries have inconsistent shapes.')
        src = LinFormMatrix.from_raw(ctx, raw, nvars)
        self._ctx, self._c, self._nvars, self._arr = src._ctx, src._c, src._nvars, src._arr
