import logging
from typing import Optional

import numpy as np

from .modular import matmul_mod, rref_mod
from ..PalatiniError import DimensionMismatch, ResourceBudgetExceeded


logger = logging.getLogger(__name__)


COLUMN_CHUNK_BYTES: int = 2 ** 27
"""Target size of the float64 temporaries built when multiplying against the stored echelon rows.
"""


class ModularEchelon:
    """
    Streaming row reduction over F_p for systems too large to hold as one dense matrix.

    Rows are fed in blocks with :func:`add_rows`. The eliminator keeps the reduced row echelon form of everything fed
    so far, but stores only its entries in the free (non-pivot) columns, since the pivot columns of an RREF form an
    identity block. With r pivots among n columns this takes r * (n - r) residues, at most n^2 / 4, held as int32.

    The pivot of every stored row is its leftmost nonzero column, so the pivot set, and with it the set of free
    columns, depends only on the row space and not on the order in which rows were fed.

    :param int p: The prime modulus.
    :param int ncols: The number of columns.
    :param Optional[int] budget_bytes: If given, a :class:`~pyPalatini.Palatini.PalatiniError.ResourceBudgetExceeded`
        is raised at construction when :func:`estimate_peak_bytes` exceeds it.
    """

    @staticmethod
    def estimate_peak_bytes(ncols: int) -> int:
        """Upper estimate of the peak memory of a full elimination on ncols columns: the int32 state at its largest,
        plus the copy made while merging new pivots.
        """
        return 2 * 4 * (ncols // 2) * (ncols - ncols // 2)

    @property
    def p(self) -> int:
        return self._p

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rank(self) -> int:
        return len(self._piv)

    @property
    def nullity(self) -> int:
        return self._ncols - len(self._piv)

    @property
    def pivots(self) -> np.ndarray:
        """Pivot columns, in the order the corresponding rows were stored.
        """
        return self._piv

    @property
    def free_columns(self) -> np.ndarray:
        """The non-pivot columns, ascending.
        """
        return self._free

    @property
    def free_part(self) -> np.ndarray:
        """The stored rows restricted to the free columns; row i belongs to pivot ``pivots[i]``.
        """
        return self._E

    def _chunk_width(self) -> int:
        return max(1, COLUMN_CHUNK_BYTES // (8 * max(1, len(self._piv))))

    def _times_state(self, coeff: np.ndarray) -> np.ndarray:
        """coeff @ E mod p, with E converted to float64 one column chunk at a time.
        """
        width = self._chunk_width()
        nfree = self._E.shape[1]
        out = np.empty((coeff.shape[0], nfree), dtype=np.int64)
        for start in range(0, nfree, width):
            stop = min(nfree, start + width)
            out[:, start:stop] = matmul_mod(coeff, self._E[:, start:stop], self._p)
        return out

    def reduce(self, block: np.ndarray) -> np.ndarray:
        """Reduce rows against the stored echelon rows.

        :param np.ndarray block: A (b x ncols) integer array.
        :return: The residual on the free columns, a (b x nfree) array; it is zero exactly for rows in the span.
        :rtype: np.ndarray
        """
        block = np.asarray(block, dtype=np.int64)
        if block.ndim != 2 or block.shape[1] != self._ncols:
            raise DimensionMismatch(f'Expected rows of length {self._ncols}, got shape {block.shape}.')
        block = block % self._p
        residual = block[:, self._free]
        if len(self._piv):
            residual = (residual - self._times_state(block[:, self._piv])) % self._p
        return residual

    def _merge(self, residual: np.ndarray) -> int:
        red, local = rref_mod(residual, self._p)
        if not local:
            return 0
        new = red[:len(local)]
        if len(self._piv):
            # clear the new pivot columns from the stored rows
            hit = self._E[:, local].astype(np.int64)
            width = self._chunk_width()
            for start in range(0, new.shape[1], width):
                stop = min(new.shape[1], start + width)
                upd = matmul_mod(hit, new[:, start:stop], self._p)
                self._E[:, start:stop] = (self._E[:, start:stop].astype(np.int64) - upd) % self._p
        stacked = np.vstack([self._E, new.astype(np.int32)])
        self._E = np.delete(stacked, local, axis=1)
        self._piv = np.concatenate([self._piv, self._free[local]])
        self._free = np.delete(self._free, local)
        return len(local)

    def add_rows(self, block: np.ndarray) -> int:
        """Add a block of rows.

        :param np.ndarray block: A (b x ncols) integer array.
        :return: The number of new pivots, i.e. the rank increase.
        :rtype: int
        """
        return self._merge(self.reduce(block))

    def add_rows_tracked(self, block: np.ndarray) -> list[int]:
        """Add a block of rows one at a time, reporting which of them enlarged the row space.

        :return: Indices, into block, of the rows not in the span of the stored rows and the earlier rows of block.
        :rtype: list[int]
        """
        residual = self.reduce(block)
        local = ModularEchelon(self._p, residual.shape[1])
        independent = []
        for i in range(residual.shape[0]):
            if local.add_rows(residual[i:i + 1]):
                independent.append(i)
        if independent:
            self._merge(residual[independent])
        return independent

    def contains(self, block: np.ndarray) -> np.ndarray:
        """For each row of block, whether it lies in the span of the stored rows.
        """
        return ~self.reduce(block).any(axis=1)

    def express_columns(self, cols: np.ndarray) -> np.ndarray:
        """Normal forms of unit vectors modulo the row space: for each column index c, the coordinates, on the free
        columns, of e_c reduced by the stored rows. A free column maps to its own unit vector and a pivot column to
        minus the free part of its row.

        :param np.ndarray cols: Column indices.
        :return: A (len(cols) x nfree) array.
        :rtype: np.ndarray
        """
        cols = np.asarray(cols, dtype=np.int64)
        out = np.zeros((len(cols), len(self._free)), dtype=np.int64)
        cmap = self._colmap[cols]
        rows = np.flatnonzero(cmap >= 0)
        out[rows, cmap[rows]] = 1
        rows = np.flatnonzero(cmap < 0)
        if rows.size:
            out[rows] = (-self._E[-cmap[rows] - 1].astype(np.int64)) % self._p
        return out

    @property
    def _colmap(self) -> np.ndarray:
        """Column index -> position among the free columns (>= 0), or -(row + 1) for a pivot column.
        """
        cmap = np.empty(self._ncols, dtype=np.int64)
        cmap[self._free] = np.arange(len(self._free))
        cmap[self._piv] = -np.arange(1, len(self._piv) + 1)
        return cmap

    def kernel_basis(self) -> np.ndarray:
        """A basis of the right kernel of the stored rows, one vector per free column, in RREF-normalized form.

        :return: A (nullity x ncols) array.
        :rtype: np.ndarray
        """
        nfree = len(self._free)
        basis = np.zeros((nfree, self._ncols), dtype=np.int64)
        basis[np.arange(nfree), self._free] = 1
        if len(self._piv):
            basis[:, self._piv] = (-self._E.T.astype(np.int64)) % self._p
        return basis

    def __repr__(self):
        return f'ModularEchelon(p={self._p}, ncols={self._ncols}, rank={self.rank})'

    def __init__(self, p: int, ncols: int, budget_bytes: Optional[int] = None):
        if budget_bytes is not None:
            estimate = self.estimate_peak_bytes(ncols)
            if estimate > budget_bytes:
                raise ResourceBudgetExceeded(
                    f'Elimination on {ncols} columns needs about {estimate / 2 ** 30:.2f} GiB, '
                    f'over the budget of {budget_bytes / 2 ** 30:.2f} GiB.',
                    estimate, budget_bytes,
                )
        self._p = p
        self._ncols = ncols
        self._piv = np.zeros(0, dtype=np.int64)
        self._free = np.arange(ncols, dtype=np.int64)
        self._E = np.zeros((0, ncols), dtype=np.int32)
