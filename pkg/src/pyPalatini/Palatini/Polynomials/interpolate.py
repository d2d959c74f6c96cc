"""Recovery of a homogeneous form from its values, by solving on a fixed evaluation grid.

A form of degree d in n variables is determined by its dehomogenization at x_0 = 1, a polynomial of total degree at
most d in n - 1 variables. That polynomial is fixed by its values on the simplex grid
``{(1, y_1, ..., y_{n-1}) : y_i in {0, ..., d}, sum(y_i) <= d}``, once the integers 0, ..., d are distinct field
elements, i.e. once the field has more than d elements. Smaller fields are handled by evaluating over an
extension and reading the coefficients back in the original field.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Any, Callable, Sequence

import numpy as np

from .MonomialBasis import MonomialBasis, monomial_basis
from .MultiPoly import MultiPoly
from ..Fields.FieldCtx import FieldCtx
from ..Fields.Scalar import Scalar
from ..Linalg.Matrix import Matrix
from ..Linalg.modular import matmul_mod
from ..Palatini import thread_count
from ..PalatiniError import FieldTooSmall


logger = logging.getLogger(__name__)


Evaluator = Callable[[Sequence[Scalar]], Scalar]


def grid_points(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """The integer evaluation grid, one point per monomial of the basis: the point for x^alpha is
    ``(1, alpha_1, ..., alpha_{n-1})``.
    """
    return [(1,) + e[1:] for e in monomial_basis(nvars, degree).exponents]


@lru_cache(maxsize=16)
def working_field(ctx: FieldCtx, degree: int, lift: bool = True) -> FieldCtx:
    """The field the grid is evaluated over: ctx itself when it has more than degree elements, otherwise the
    smallest extension of ctx that does. Extensions of an extension field carry the embedding of ctx, so values can
    be read back in ctx.

    :raises FieldTooSmall: If ctx is too small and lift is off.
    """
    if not ctx.is_finite or ctx.order > degree:
        return ctx
    if not lift:
        raise FieldTooSmall(f'{ctx} has too few elements to interpolate forms of degree {degree}.')
    j = 2
    while ctx.order ** j <= degree:
        j += 1
    logger.debug('Interpolating degree %d forms over an extension of degree %d of %s', degree, j, ctx)
    return ctx.extension(j)


@lru_cache(maxsize=64)
def _grid_inverse(ctx: FieldCtx, nvars: int, degree: int) -> Matrix:
    basis = monomial_basis(nvars, degree)
    nodes = [[ctx.element(v) for v in pt] for pt in grid_points(nvars, degree)]
    rows = []
    for pt in nodes:
        row = []
        for e in basis.exponents:
            v = ctx.one
            for x, k in zip(pt, e):
                if k:
                    v = v * x ** k
            row.append(v)
        rows.append(row)
    n = len(basis)
    aug = Matrix(ctx, [list(r) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, r in enumerate(rows)],
                 2 * n)
    red, pivots = aug.rref()
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise FieldTooSmall(f'The evaluation grid is not unisolvent over {ctx}.')
    if red.is_prime:
        return Matrix.from_array(ctx, red.array[:, n:])
    return Matrix.from_raw(ctx, [r[n:] for r in red.raw_rows()], n)


def interpolate_form(ctx: FieldCtx, nvars: int, degree: int, evaluator: Evaluator,
                     lift: bool = True) -> MultiPoly:
    """Recover the form of the given degree in nvars variables whose values are given by evaluator.

    :param FieldCtx ctx: The coefficient field of the form.
    :param int nvars: Number of variables.
    :param int degree: Degree of the form.
    :param Evaluator evaluator: Maps a point (a list of Scalars, possibly in an extension of ctx) to the value there.
    :param bool lift: Evaluate over an extension when ctx is too small; otherwise raise FieldTooSmall.
    :return: The form, over ctx.
    :rtype: MultiPoly
    """
    basis: MonomialBasis = monomial_basis(nvars, degree)
    work = working_field(ctx, degree, lift)
    points = [[work.element(v) for v in pt] for pt in grid_points(nvars, degree)]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        values = [work(v).raw for v in pool.map(evaluator, points)]
    inv = _grid_inverse(work, nvars, degree)
    if inv.is_prime:
        coeffs = matmul_mod(inv.array, np.array(values, dtype=np.int64).reshape(-1, 1), work.p)[:, 0].tolist()
    else:
        coeffs = [_dot(work, row, values) for row in inv.raw_rows()]
    if work != ctx:
        coeffs = [work.descend_to(ctx, c) for c in coeffs]
    return MultiPoly.from_raw(ctx, nvars, dict(zip(basis.exponents, coeffs)))


def _dot(ctx: FieldCtx, a: Sequence[Any], b: Sequence[Any]) -> Any:
    acc = ctx.r_zero()
    for x, y in zip(a, b):
        acc = ctx.r_add(acc, ctx.r_mul(x, y))
    return acc

