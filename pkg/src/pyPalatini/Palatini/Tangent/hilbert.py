"""Graded pieces of the minor ideal and the tangent space to the Hilbert scheme at a Palatini scroll.

The tangent space is computed as the degree-0 homomorphisms from the ideal I generated by the maximal minors g_J of
F to the coordinate ring S/I. Such a homomorphism sends each g_J to some h_J in (S/I)_m and is well defined exactly
when every relation sum_J f_J g_J = 0 gives sum_J f_J h_J = 0 in S/I. A relation that is a multiple of lower-degree
relations imposes nothing new, so in each degree only relations outside the span of x_i times the relations one
degree lower are turned into constraints.

Everything here runs over prime fields, on numpy residue arrays and the streaming eliminator.
"""
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from .GradedPiece import GradedPiece
from .SyzygyBasis import SyzygyBasis
from .TangentReport import StabilizationStep, TangentReport
from ..Chow.degree import expected_tangent_dim, reference_h1
from ..Fields.FieldCtx import PrimeFieldCtx
from ..Linalg.ModularEchelon import ModularEchelon
from ..Linalg.modular import matmul_mod
from ..Palatini import DEFAULT_SYZYGY_CAP_OFFSET, TANGENT_MEMORY_BUDGET_BYTES, TangentStatus, thread_count
from ..PalatiniError import (
    GenericityNotProbed, NoStabilization, PalatiniError, RangeError, WrongFieldKind,
)
from ..Polynomials.MonomialBasis import monomial_basis
from ..Scroll.GenericityReport import GenericityReport
from ..Scroll.PalatiniInstance import PalatiniInstance


logger = logging.getLogger(__name__)


ROW_BLOCK: int = 512
"""Rows fed to an eliminator at a time when reducing a materialized matrix.
"""


CONSTRAINT_BLOCK_BYTES: int = 2 ** 26
"""Target size of one block of tangent constraint rows.
"""


def _prime_field(inst: PalatiniInstance) -> PrimeFieldCtx:
    if not isinstance(inst.ctx, PrimeFieldCtx):
        raise WrongFieldKind(f'Graded computations run over prime fields, not {inst.ctx}.')
    return inst.ctx


def multiplication_matrix(inst: PalatiniInstance, d: int) -> np.ndarray:
    """The products x^alpha * g_J, |alpha| = d - m, as rows of coefficients on the monomial basis of S_d. Row
    J * len(B) + a holds x^(alpha_a) * g_J, B being the monomial basis of degree d - m.
    """
    gens = inst.minor_system.coefficients
    gen_basis = monomial_basis(inst.n, inst.m)
    source = monomial_basis(inst.n, d - inst.m)
    target = monomial_basis(inst.n, d)
    count, width = gens.shape[0], len(source)
    out = np.zeros((count * width, len(target)), dtype=np.int64)
    base = np.arange(count) * width
    for a, alpha in enumerate(source):
        out[np.ix_(base + a, gen_basis.shift_indices(alpha, target))] = gens
    return out


def _eliminate(p: int, rows: np.ndarray, ncols: int, budget_bytes: Optional[int]) -> ModularEchelon:
    echelon = ModularEchelon(p, ncols, budget_bytes)
    for start in range(0, rows.shape[0], ROW_BLOCK):
        echelon.add_rows(rows[start:start + ROW_BLOCK])
    return echelon


def _piece(inst: PalatiniInstance, d: int, mult: np.ndarray, budget_bytes: Optional[int]) -> GradedPiece:
    basis = monomial_basis(inst.n, d)
    piece = GradedPiece(d, basis, _eliminate(inst.ctx.p, mult, len(basis), budget_bytes), mult.shape[0])
    logger.debug('Degree %d: dim S_d = %d, dim I_d = %d', d, len(basis), piece.ideal_dim)
    return piece


def _syzygies(inst: PalatiniInstance, d: int, mult: np.ndarray, budget_bytes: Optional[int]) -> SyzygyBasis:
    p = inst.ctx.p
    echelon = _eliminate(p, np.ascontiguousarray(mult.T), mult.shape[0], budget_bytes)
    relations = echelon.kernel_basis()
    if relations.size and matmul_mod(relations, mult, p).any():
        raise PalatiniError(f'A relation of degree {d} among the minors does not vanish.')
    return SyzygyBasis(inst.ctx, d, len(inst.minors), monomial_basis(inst.n, d - inst.m), relations)


def _ideal_piece(inst: PalatiniInstance, d: int, budget_bytes: Optional[int]) -> GradedPiece:
    _prime_field(inst)
    if d < 0:
        raise RangeError(f'Degree must be non-negative, got {d}.')
    if d < inst.m:
        basis = monomial_basis(inst.n, d)
        return GradedPiece(d, basis, ModularEchelon(inst.ctx.p, len(basis)), 0)
    return _piece(inst, d, multiplication_matrix(inst, d), budget_bytes)


def ideal_piece(inst: PalatiniInstance, d: int, budget_bytes: Optional[int] = None,
                report: Optional[GenericityReport] = None) -> GradedPiece:
    """The degree-d piece of the ideal of maximal minors, spanned by x^alpha * g_J for |alpha| = d - m. Below degree m
    the piece is zero and the quotient is all of S_d.

    :param Optional[GenericityReport] report: The genericity check of the instance; a
        :class:`~pyPalatini.Palatini.PalatiniError.GenericityNotProbed` warning is issued when it is missing or
        failed.
    :raises WrongFieldKind: Unless the instance is over a prime field.
    :raises RangeError: If d is negative.
    :raises ResourceBudgetExceeded: If the elimination would exceed budget_bytes.
    """
    _check_generic(report, 'Ideal piece')
    return _ideal_piece(inst, d, budget_bytes)


def syzygies_in_degree(inst: PalatiniInstance, d: int, budget_bytes: Optional[int] = None) -> SyzygyBasis:
    """A basis of the relations sum_J f_J g_J = 0 with every f_J of degree d - m: the left kernel of
    :func:`multiplication_matrix`. Each relation is checked against the products before it is returned. In degree m
    the relations are the linear dependencies among the minors themselves, and there are none for a general
    instance.

    :raises WrongFieldKind: Unless the instance is over a prime field.
    :raises RangeError: If d < m.
    """
    _prime_field(inst)
    if d < inst.m:
        raise RangeError(f'Relations among the minors start in degree {inst.m}, got {d}.')
    return _syzygies(inst, d, multiplication_matrix(inst, d), budget_bytes)


def hilbert_function(inst: PalatiniInstance, d_max: int,
                     report: Optional[GenericityReport] = None) -> list[tuple[int, int]]:
    """dim (S/I)_d for d = 0..d_max. Warns like :func:`ideal_piece` without a passing report.
    """
    _check_generic(report, 'Hilbert function')
    return [(d, _ideal_piece(inst, d, None).quotient_dim) for d in range(d_max + 1)]


def _shifted_relations(inst: PalatiniInstance, prev: SyzygyBasis) -> np.ndarray:
    """x_i times each relation of prev, for every variable, as relations one degree higher.
    """
    source = prev.basis
    target = monomial_basis(inst.n, prev.degree + 1 - inst.m)
    count = prev.generator_count
    blocks = prev.coefficient_blocks()
    out = np.zeros((len(prev) * inst.n, count * len(target)), dtype=np.int64)
    for i in range(inst.n):
        unit = tuple(1 if j == i else 0 for j in range(inst.n))
        idx = source.shift_indices(unit, target)
        shifted = np.zeros((len(prev), count, len(target)), dtype=np.int64)
        shifted[:, :, idx] = blocks
        out[i * len(prev):(i + 1) * len(prev)] = shifted.reshape(len(prev), -1)
    return out


def minimal_relations(inst: PalatiniInstance, syz: SyzygyBasis, prev: Optional[SyzygyBasis]) -> np.ndarray:
    """The relations of syz that are not in the span of x_i * prev, one per new dimension.
    """
    if prev is None or not len(prev):
        return syz.relations
    echelon = ModularEchelon(inst.ctx.p, syz.relations.shape[1])
    shifted = _shifted_relations(inst, prev)
    for start in range(0, shifted.shape[0], ROW_BLOCK):
        echelon.add_rows(shifted[start:start + ROW_BLOCK])
    return syz.relations[echelon.add_rows_tracked(syz.relations)]


class _ConstraintTable:
    """
    Normal forms of x^gamma * x^beta in (S/I)_d, for gamma of degree d - m and beta running over the representative
    monomials of (S/I)_m, split along the target coordinates into chunks. A relation (f_J) then contributes, for
    each chunk, the rows ``f @ chunk`` rearranged so that each row is one target coordinate and each column one
    unknown coefficient of some h_J.
    """

    def rows(self, relation: np.ndarray, chunk: int) -> np.ndarray:
        f = relation.reshape(self._count, -1)
        table, width = self._chunks[chunk]
        prod = matmul_mod(f, table, self._p)
        return prod.reshape(self._count, self._q_m, width).transpose(2, 0, 1).reshape(width, self._count * self._q_m)

    def __len__(self):
        return len(self._chunks)

    def __init__(self, p: int, count: int, piece_m: GradedPiece, piece_d: GradedPiece):
        self._p = p
        self._count = count
        self._q_m = piece_m.quotient_dim
        source = monomial_basis(piece_d.basis.nvars, piece_d.degree - piece_m.degree)
        reps = [piece_m.basis.exponents[i] for i in piece_m.representatives]
        idx = np.array([[piece_d.basis.index(tuple(a + b for a, b in zip(gamma, beta))) for beta in reps]
                        for gamma in source], dtype=np.int64).reshape(len(source), len(reps))
        q_d = piece_d.quotient_dim
        forms = piece_d.monomial_normal_forms(idx.ravel()).reshape(len(source), self._q_m, q_d)
        width = max(1, CONSTRAINT_BLOCK_BYTES // (8 * max(1, count * self._q_m)))
        self._chunks = []
        for start in range(0, q_d, width):
            stop = min(q_d, start + width)
            chunk = np.ascontiguousarray(forms[:, :, start:stop]).reshape(len(source), -1)
            self._chunks.append((chunk, stop - start))


def _impose(echelon: ModularEchelon, table: _ConstraintTable, relations: np.ndarray, workers: int):
    """Feed the constraints of every relation, in relation-major then chunk order. Blocks are built on the worker
    threads a window at a time and added in submission order.
    """
    items = [(r, c) for r in range(relations.shape[0]) for c in range(len(table))]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(items), workers):
            window = items[start:start + workers]
            for block in pool.map(lambda item: table.rows(relations[item[0]], item[1]), window):
                echelon.add_rows(block)


def _check_generic(report: Optional[GenericityReport], subject: str = 'Tangent dimension'):
    if report is None:
        warnings.warn(f'{subject} computed on an instance without a genericity check.', GenericityNotProbed,
                      stacklevel=3)
    elif not report.passed:
        warnings.warn(f'{subject} computed on an instance that failed its genericity check.',
                      GenericityNotProbed, stacklevel=3)


def tangent_dimension(inst: PalatiniInstance, syzygy_degree_cap: Optional[int] = None,
                      budget_bytes: Optional[int] = TANGENT_MEMORY_BUDGET_BYTES, strict: bool = False,
                      report: Optional[GenericityReport] = None, threads: Optional[int] = None) -> TangentReport:
    """Dimension of the degree-0 homomorphisms I -> S/I, imposing the relations among the minors of every degree up
    to the cap. The dimension is recorded after each degree from m + 1 on; it has stabilized when the last two
    records agree.

    :param PalatiniInstance inst: An instance over a prime field.
    :param Optional[int] syzygy_degree_cap: The highest relation degree imposed; m + 3 when not given.
    :param Optional[int] budget_bytes: Ceiling on the estimated memory of each elimination; None for no ceiling.
    :param bool strict: Raise rather than report when the dimension has not stabilized at the cap.
    :param Optional[GenericityReport] report: The genericity check of the instance; a
        :class:`~pyPalatini.Palatini.PalatiniError.GenericityNotProbed` warning is issued when it is missing or
        failed.
    :param Optional[int] threads: Worker threads for building constraint blocks.
    :return: The report.
    :rtype: TangentReport
    :raises WrongFieldKind: Unless the instance is over a prime field.
    :raises RangeError: If the cap is below m + 1.
    :raises ResourceBudgetExceeded: If an elimination would exceed the budget.
    :raises NoStabilization: In strict mode, if the dimension was still dropping at the cap.
    """
    ctx = _prime_field(inst)
    m, k = inst.m, inst.k
    cap = m + DEFAULT_SYZYGY_CAP_OFFSET if syzygy_degree_cap is None else syzygy_degree_cap
    if cap < m + 1:
        raise RangeError(f'The relation degree cap must be at least {m + 1}, got {cap}.')
    _check_generic(report)
    workers = thread_count(threads)
    count = len(inst.minors)
    mult = multiplication_matrix(inst, m)
    piece_m = _piece(inst, m, mult, budget_bytes)
    unknowns = ModularEchelon(ctx.p, count * piece_m.quotient_dim, budget_bytes)
    logger.info('Tangent space of %r: %d minors, dim (S/I)_%d = %d, %d unknowns', inst, count, m,
                piece_m.quotient_dim, unknowns.ncols)
    quotient_dims = {m: piece_m.quotient_dim}
    degrees, steps = [], []
    prev = None
    for d in range(m, cap + 1):
        if d > m:
            mult = multiplication_matrix(inst, d)
        piece = piece_m if d == m else _piece(inst, d, mult, budget_bytes)
        syz = _syzygies(inst, d, mult, budget_bytes)
        new = minimal_relations(inst, syz, prev)
        quotient_dims[d] = piece.quotient_dim
        if new.shape[0] and piece.quotient_dim and unknowns.ncols:
            degrees.append(d)
            _impose(unknowns, _ConstraintTable(ctx.p, count, piece_m, piece), new, workers)
        prev = syz
        if d > m:
            steps.append(StabilizationStep(max_syzygy_degree=d, syzygies=int(new.shape[0]), dim=unknowns.nullity))
            logger.info('Relations up to degree %d (%d new in degree %d): dimension %d', d, new.shape[0], d,
                        unknowns.nullity)
    expected = expected_tangent_dim(m, k)
    try:
        h1 = reference_h1(m, k)
    except RangeError:
        h1 = None
    computed = unknowns.nullity
    stabilized = len(steps) >= 2 and steps[-1].dim == steps[-2].dim
    if not stabilized:
        status = TangentStatus.NO_STABILIZATION
    elif expected is None:
        status = TangentStatus.NO_REFERENCE
    else:
        status = TangentStatus.AGREE if computed == expected else TangentStatus.DISAGREE
    result = TangentReport(
        m=m,
        k=k,
        field=str(ctx),
        generator_count=count,
        syzygy_degrees=degrees,
        quotient_dims=quotient_dims,
        computed_dim=computed,
        expected_dim=expected,
        expected_h1=h1,
        agree=status == TangentStatus.AGREE,
        status=status,
        stabilization=steps,
        instance_hash=inst.digest,
    )
    if status == TangentStatus.NO_STABILIZATION:
        logger.warning('Tangent dimension of %r still changing at relation degree %d: %s', inst, cap,
                       [step.dim for step in steps])
        if strict:
            raise NoStabilization(f'Dimension still changing at relation degree {cap}.')
    elif status == TangentStatus.DISAGREE:
        logger.warning('Tangent dimension %d of %r differs from the closed form %d', computed, inst, expected)
    return result
