import logging
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .modular import det_mod, matmul_mod, pfaffian_mod, rref_mod
from ..Fields.FieldCtx import FieldCtx, PrimeFieldCtx
from ..Fields.Scalar import Scalar
from ..PalatiniError import DimensionMismatch, FieldMismatch, NotSkewSymmetric, ShapeError


logger = logging.getLogger(__name__)


class Matrix:
    """
    A dense matrix over an exact field.

    Over a prime field the entries are held in a numpy int64 array of residues and every operation runs on the
    vectorized kernels of :mod:`~pyPalatini.Palatini.Linalg.modular`; over extension fields and Q the entries are
    nested lists of raw field values and the same algorithms run element by element. Both paths use the same pivot
    rule (the first nonzero entry in scan order), so results are deterministic and agree across representations.

    :param FieldCtx ctx: The field.
    :param Iterable[Iterable] rows: The entries, row by row, as Scalars of ctx or values ctx can coerce.
    :param Optional[int] cols: The column count; only needed when there are no rows.
    """

    # Construction

    @classmethod
    def from_array(cls, ctx: PrimeFieldCtx, arr: np.ndarray) -> 'Matrix':
        """Wrap an integer array as a matrix over a prime field; entries are reduced mod p.
        """
        mat = cls.__new__(cls)
        mat._ctx = ctx
        mat._arr = np.asarray(arr, dtype=np.int64) % ctx.p
        mat._data = None
        mat._shape = mat._arr.shape
        return mat

    @classmethod
    def from_raw(cls, ctx: FieldCtx, data: list[list[Any]], cols: Optional[int] = None) -> 'Matrix':
        if ctx.kind == PrimeFieldCtx.kind:
            arr = np.array(data, dtype=np.int64).reshape(len(data), cols if cols is not None else
                                                         (len(data[0]) if data else 0))
            return cls.from_array(ctx, arr)
        mat = cls.__new__(cls)
        mat._ctx = ctx
        mat._arr = None
        mat._data = data
        mat._shape = (len(data), cols if cols is not None else (len(data[0]) if data else 0))
        return mat

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> 'Matrix':
        return cls.from_raw(ctx, [[ctx.r_zero()] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> 'Matrix':
        return cls.from_raw(ctx, [[ctx.r_one() if i == j else ctx.r_zero() for j in range(n)] for i in range(n)], n)

    @classmethod
    def random(cls, ctx: FieldCtx, rows: int, cols: int, rng: np.random.Generator) -> 'Matrix':
        return cls.from_raw(ctx, [[ctx.r_random(rng) for _ in range(cols)] for _ in range(rows)], cols)

    @classmethod
    def random_skew(cls, ctx: FieldCtx, n: int, rng: np.random.Generator) -> 'Matrix':
        """A uniformly random skew-symmetric matrix with zero diagonal; entries below the diagonal are drawn in
        row-major order.
        """
        data = [[ctx.r_zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i):
                v = ctx.r_random(rng)
                data[i][j] = v
                data[j][i] = ctx.r_neg(v)
        return cls.from_raw(ctx, data, n)

    @classmethod
    def from_columns(cls, ctx: FieldCtx, columns: Sequence[Sequence[Any]], rows: int) -> 'Matrix':
        raw = [[ctx(c[i]).raw for c in columns] for i in range(rows)]
        return cls.from_raw(ctx, raw, len(columns))

    # Properties

    @property
    def ctx(self) -> FieldCtx:
        return self._ctx

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> int:
        return self._shape[0]

    @property
    def cols(self) -> int:
        return self._shape[1]

    @property
    def is_prime(self) -> bool:
        return self._arr is not None

    @property
    def array(self) -> np.ndarray:
        """The residue array of a matrix over a prime field.
        """
        if self._arr is None:
            raise TypeError(f'Matrices over {self._ctx} have no residue array.')
        return self._arr

    def raw_rows(self) -> list[list[Any]]:
        if self._arr is not None:
            return [[int(v) for v in row] for row in self._arr]
        return self._data

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        raw = int(self._arr[i, j]) if self._arr is not None else self._data[i][j]
        return Scalar(self._ctx, raw)

    def row(self, i: int) -> list[Scalar]:
        return [self[i, j] for j in range(self.cols)]

    def column(self, j: int) -> list[Scalar]:
        return [self[i, j] for i in range(self.rows)]

    def columns(self) -> list[list[Scalar]]:
        return [self.column(j) for j in range(self.cols)]

    # Arithmetic

    def _check_same(self, other: 'Matrix'):
        if other._ctx != self._ctx:
            raise FieldMismatch(f'Cannot combine matrices over {self._ctx} and {other._ctx}.')

    def transpose(self) -> 'Matrix':
        if self._arr is not None:
            return Matrix.from_array(self._ctx, self._arr.T.copy())
        return Matrix.from_raw(self._ctx, [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                               self.rows)

    @property
    def T(self) -> 'Matrix':
        return self.transpose()

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f'Cannot add matrices of shapes {self.shape} and {other.shape}.')
        if self._arr is not None:
            return Matrix.from_array(self._ctx, self._arr + other._arr)
        add = self._ctx.r_add
        return Matrix.from_raw(self._ctx, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                               self.cols)

    def __neg__(self) -> 'Matrix':
        return self.scale(self._ctx(-1))

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        return self + (-other)

    def scale(self, c: Any) -> 'Matrix':
        c = self._ctx(c)
        if self._arr is not None:
            return Matrix.from_array(self._ctx, (self._arr * c.raw) % self._ctx.p)
        mul = self._ctx.r_mul
        return Matrix.from_raw(self._ctx, [[mul(c.raw, a) for a in r] for r in self._data], self.cols)

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        self._check_same(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f'Cannot multiply matrices of shapes {self.shape} and {other.shape}.')
        if self._arr is not None:
            return Matrix.from_array(self._ctx, matmul_mod(self._arr, other._arr, self._ctx.p))
        ctx = self._ctx
        out = []
        for r in self._data:
            row = []
            for j in range(other.cols):
                acc = ctx.r_zero()
                for t, a in enumerate(r):
                    acc = ctx.r_add(acc, ctx.r_mul(a, other._data[t][j]))
                row.append(acc)
            out.append(row)
        return Matrix.from_raw(ctx, out, other.cols)

    def apply(self, vector: Sequence[Any]) -> list[Scalar]:
        """The matrix-vector product with a vector given as a sequence of field values.
        """
        if len(vector) != self.cols:
            raise DimensionMismatch(f'Vector of length {len(vector)} does not match {self.cols} columns.')
        col = Matrix.from_columns(self._ctx, [vector], self.cols)
        return (self @ col).column(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self._ctx != other._ctx or self.shape != other.shape:
            return False
        if self._arr is not None:
            return bool(np.array_equal(self._arr, other._arr))
        return self._data == other._data

    # Elimination

    def rref(self) -> tuple['Matrix', list[int]]:
        """The reduced row echelon form and its pivot columns.
        """
        if self._arr is not None:
            arr, pivots = rref_mod(self._arr, self._ctx.p)
            return Matrix.from_array(self._ctx, arr), pivots
        data, pivots = _rref_generic(self._ctx, self._data, self.cols)
        return Matrix.from_raw(self._ctx, data, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> 'Matrix':
        """A basis of the right kernel, as the columns of a (cols x nullity) matrix. The basis is in RREF-normalized
        form: the basis vector for the free column f has a 1 in position f, zeros in the other free positions, and
        minus the RREF entries of column f in the pivot positions. Zero columns when the kernel is trivial.
        """
        ctx = self._ctx
        rref, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in set(pivots)]
        if self._arr is not None:
            basis = np.zeros((self.cols, len(free)), dtype=np.int64)
            for t, f in enumerate(free):
                basis[f, t] = 1
                for i, pc in enumerate(pivots):
                    basis[pc, t] = -rref._arr[i, f] % ctx.p
            return Matrix.from_array(ctx, basis)
        basis = [[ctx.r_zero()] * len(free) for _ in range(self.cols)]
        for t, f in enumerate(free):
            basis[f][t] = ctx.r_one()
            for i, pc in enumerate(pivots):
                basis[pc][t] = ctx.r_neg(rref._data[i][f])
        return Matrix.from_raw(ctx, basis, len(free))

    def nullity(self) -> int:
        return self.cols - self.rank()

    def det(self) -> Scalar:
        """The determinant of a square matrix.

        :raises ShapeError: If the matrix is not square.
        """
        if self.rows != self.cols:
            raise ShapeError(f'Determinant of a non-square {self.rows}x{self.cols} matrix.')
        if self._arr is not None:
            return Scalar(self._ctx, det_mod(self._arr, self._ctx.p))
        return Scalar(self._ctx, _det_generic(self._ctx, self._data))

    def is_skew(self) -> bool:
        """Whether the matrix is square, skew-symmetric, and has a zero diagonal (the last condition matters in
        characteristic 2).
        """
        if self.rows != self.cols:
            return False
        if self._arr is not None:
            return bool(np.array_equal((self._arr + self._arr.T) % self._ctx.p, np.zeros_like(self._arr))
                        and not np.diagonal(self._arr).any())
        ctx = self._ctx
        return all(ctx.r_is_zero(self._data[i][i]) for i in range(self.rows)) and \
            all(ctx.r_is_zero(ctx.r_add(self._data[i][j], self._data[j][i]))
                for i in range(self.rows) for j in range(i))

    def pfaffian(self) -> Scalar:
        """The pfaffian of a skew-symmetric matrix with zero diagonal. Odd sizes give zero; the empty matrix gives
        one. Satisfies pfaffian(A)^2 == det(A).

        :raises ShapeError: If the matrix is not square.
        :raises NotSkewSymmetric: If the matrix is not skew-symmetric with zero diagonal.
        """
        if self.rows != self.cols:
            raise ShapeError(f'Pfaffian of a non-square {self.rows}x{self.cols} matrix.')
        if not self.is_skew():
            raise NotSkewSymmetric('Pfaffian of a matrix that is not skew-symmetric with zero diagonal.')
        if self._arr is not None:
            return Scalar(self._ctx, pfaffian_mod(self._arr, self._ctx.p))
        return Scalar(self._ctx, _pfaffian_generic(self._ctx, self._data))

    # Serialization

    def to_json(self) -> list[list[Any]]:
        return [[self._ctx.r_to_json(v) for v in row] for row in self.raw_rows()]

    def __str__(self):
        return '\n'.join(' '.join(self._ctx.r_str(v) for v in row) for row in self.raw_rows())

    def __repr__(self):
        return f'Matrix({self.rows}x{self.cols} over {self._ctx})'

    def __init__(self, ctx: FieldCtx, rows: Iterable[Iterable[Any]], cols: Optional[int] = None):
        data = [[ctx(v).raw for v in row] for row in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise DimensionMismatch('Matrix rows have differing lengths.')
        self._ctx = ctx
        self._shape = (len(data), cols)
        if ctx.kind == PrimeFieldCtx.kind:
            self._arr = np.array(data, dtype=np.int64).reshape(len(data), cols)
            self._data = None
        else:
            self._arr = None
            self._data = data


def _rref_generic(ctx: FieldCtx, data: list[list[Any]], cols: int) -> tuple[list[list[Any]], list[int]]:
    m = [list(row) for row in data]
    rows = len(m)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = next((i for i in range(r, rows) if not ctx.r_is_zero(m[i][c])), None)
        if i is None:
            continue
        m[r], m[i] = m[i], m[r]
        inv = ctx.r_inv(m[r][c])
        m[r] = [ctx.r_mul(v, inv) for v in m[r]]
        for t in range(rows):
            if t != r and not ctx.r_is_zero(m[t][c]):
                f = m[t][c]
                m[t] = [ctx.r_sub(a, ctx.r_mul(f, b)) for a, b in zip(m[t], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _det_generic(ctx: FieldCtx, data: list[list[Any]]) -> Any:
    m = [list(row) for row in data]
    n = len(m)
    det = ctx.r_one()
    for c in range(n):
        i = next((i for i in range(c, n) if not ctx.r_is_zero(m[i][c])), None)
        if i is None:
            return ctx.r_zero()
        if i != c:
            m[c], m[i] = m[i], m[c]
            det = ctx.r_neg(det)
        det = ctx.r_mul(det, m[c][c])
        inv = ctx.r_inv(m[c][c])
        for t in range(c + 1, n):
            if not ctx.r_is_zero(m[t][c]):
                f = ctx.r_mul(m[t][c], inv)
                m[t] = [ctx.r_sub(a, ctx.r_mul(f, b)) for a, b in zip(m[t], m[c])]
    return det


def _pfaffian_generic(ctx: FieldCtx, data: list[list[Any]]) -> Any:
    m = [list(row) for row in data]
    n = len(m)
    if n % 2:
        return ctx.r_zero()
    pf = ctx.r_one()
    for k in range(0, n, 2):
        i = next((i for i in range(k + 1, n) if not ctx.r_is_zero(m[i][k])), None)
        if i is None:
            return ctx.r_zero()
        if i != k + 1:
            m[k + 1], m[i] = m[i], m[k + 1]
            for row in m:
                row[k + 1], row[i] = row[i], row[k + 1]
            pf = ctx.r_neg(pf)
        piv = m[k][k + 1]
        pf = ctx.r_mul(pf, piv)
        inv = ctx.r_inv(piv)
        c0, c1 = m[k], m[k + 1]
        for a in range(k + 2, n):
            for b in range(k + 2, n):
                upd = ctx.r_sub(ctx.r_mul(c1[a], c0[b]), ctx.r_mul(c0[a], c1[b]))
                m[a][b] = ctx.r_add(m[a][b], ctx.r_mul(upd, inv))
    return pf
