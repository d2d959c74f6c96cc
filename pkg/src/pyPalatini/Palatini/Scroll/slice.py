"""Degree evidence for surface scrolls (m = 3) by counting the points of a linear slice.

A codimension-2 linear subspace W = {lambda_1 = lambda_2 = 0} of P(V) meets the surface X in deg X points. A point v
of X lies over a unique u of the plane curve Y, and ker M(u) meets W exactly when the bordered pfaffian
Q(u) = Pf([[M(u), L], [-L^T, 0]]) vanishes, L holding lambda_1 and lambda_2 as columns. So the points of X in W
correspond to the common zeros of pf and Q in P^2, which are found from the resultant in one affine coordinate.

A slice is in general position when that resultant has degree k(k - 1) and no repeated root: all k(k - 1)
intersection points are then simple and affine with distinct first coordinates, so the number of points rational
over F_{p^e} is the number of roots of the resultant in F_{p^e}.
"""
import logging
from typing import NamedTuple, Optional

import numpy as np

from .PalatiniInstance import PalatiniInstance, normalize_point
from .incidence import sampling_field
from ..Chow.degree import palatini_degree
from ..Fields.FieldCtx import FieldCtx
from ..Fields.Scalar import Scalar
from ..Fields.UniPoly import UniPoly, poly_roots
from ..Linalg.Matrix import Matrix
from ..Palatini import SLICE_RETRY_BUDGET
from ..PalatiniError import DegeneratePfaffian, PalatiniError, RangeError, SamplingExhausted
from ..Polynomials.MultiPoly import MultiPoly
from ..Polynomials.interpolate import interpolate_form


logger = logging.getLogger(__name__)


SliceCount = NamedTuple('SliceCount', [('ext_degree', int), ('count', int), ('points', list), ('seed', int)])
"""The points of X in one slice that are rational over F_{p^ext_degree}.
"""


SliceEvidence = NamedTuple('SliceEvidence', [
    ('seed', int), ('redraws', int), ('counts', dict), ('reached', bool),
])
"""Point counts of one slice for each extension degree, and whether any count reached deg X.
"""


def bordered_matrix(mu: Matrix, lam: Matrix) -> Matrix:
    """The skew matrix [[mu, lam], [-lam^T, 0]].
    """
    ctx, n, c = mu.ctx, mu.rows, lam.cols
    mu_rows, lam_rows = mu.raw_rows(), lam.raw_rows()
    rows = [list(mu_rows[i]) + list(lam_rows[i]) for i in range(n)]
    rows += [[ctx.r_neg(lam_rows[i][j]) for i in range(n)] + [ctx.r_zero()] * c for j in range(c)]
    return Matrix.from_raw(ctx, rows, n + c)


def augmented_pfaffian(inst: PalatiniInstance, lam: Matrix) -> MultiPoly:
    """The pfaffian of [[M(u), L], [-L^T, 0]] as a form of degree k - 1 in u.

    :param PalatiniInstance inst: The instance.
    :param Matrix lam: A 2k x 2 matrix over the field of the instance whose columns are the linear functionals.
    :raises RangeError: If L is not 2k x 2.
    """
    if lam.shape != (inst.n, 2):
        raise RangeError(f'Expected a {inst.n}x2 matrix of functionals, got {lam.shape}.')

    def value(u: list[Scalar]) -> Scalar:
        mu = inst.pencil(u)
        return bordered_matrix(mu, _lift_matrix(lam, mu.ctx)).pfaffian()

    return interpolate_form(inst.ctx, inst.m, inst.k - 1, value)


def _lift_matrix(mat: Matrix, ctx: FieldCtx) -> Matrix:
    if mat.ctx == ctx:
        return mat
    return Matrix.from_raw(ctx, [[ctx.coerce_raw(mat.ctx, x) for x in row] for row in mat.raw_rows()], mat.cols)


def _t_coefficients(f: MultiPoly) -> list[UniPoly]:
    """f(1, s, t) as a polynomial in t whose coefficients are polynomials in s.
    """
    ctx = f.ctx
    by_t: dict[int, dict[int, object]] = {}
    for (_, b, c), coeff in f.terms.items():
        by_t.setdefault(c, {})[b] = coeff
    top = max(by_t, default=-1)
    out = []
    for c in range(top + 1):
        terms = by_t.get(c, {})
        raw = [terms.get(b, ctx.r_zero()) for b in range(max(terms, default=-1) + 1)]
        out.append(UniPoly.from_raw(ctx, raw))
    return out


def sylvester_resultant(a: list[UniPoly], b: list[UniPoly]) -> UniPoly:
    """The resultant in t of two polynomials given by their coefficient lists (lowest t-degree first) over F[s], by
    fraction-free (Bareiss) elimination of the Sylvester matrix.
    """
    ctx = a[0].ctx
    zero = UniPoly.from_raw(ctx, [])
    da, db = len(a) - 1, len(b) - 1
    size = da + db
    if size == 0:
        return UniPoly.from_raw(ctx, [ctx.r_one()])
    rows = []
    for i in range(db):
        rows.append([zero] * i + list(reversed(a)) + [zero] * (db - 1 - i))
    for i in range(da):
        rows.append([zero] * i + list(reversed(b)) + [zero] * (da - 1 - i))
    sign = 1
    prev = UniPoly.from_raw(ctx, [ctx.r_one()])
    for c in range(size - 1):
        pivot = next((r for r in range(c, size) if not rows[r][c].is_zero), None)
        if pivot is None:
            return zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        for r in range(c + 1, size):
            for j in range(c + 1, size):
                rows[r][j] = (rows[r][j] * rows[c][c] - rows[r][c] * rows[c][j]).exact_div(prev)
            rows[r][c] = zero
        prev = rows[c][c]
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det


class SliceProblem:
    """
    One seeded codimension-2 slice of a surface scroll: the functionals, the bordered pfaffian Q and the resultant
    in s of pf(1, s, t) and Q(1, s, t), all over the field of the instance. Counting over an extension only needs
    the roots of the resultant there, so one problem serves every extension degree.

    :param PalatiniInstance inst: An instance with m = 3 and a nonzero pfaffian.
    :param int seed: Seed of the functionals.
    :raises RangeError: Unless m = 3.
    :raises DegeneratePfaffian: If pf is identically zero.
    :raises SamplingExhausted: If the slice is not in general position.
    """

    @property
    def functionals(self) -> Matrix:
        return self._lam

    @property
    def Q(self) -> MultiPoly:
        return self._Q

    @property
    def resultant(self) -> UniPoly:
        return self._res

    def points(self, ext_degree: int = 1) -> SliceCount:
        """The points of X in the slice that are rational over F_{p^ext_degree}, each checked for membership and for
        lying in W.
        """
        inst = self._inst
        ctx = sampling_field(inst, ext_degree)
        res = UniPoly.from_raw(ctx, [ctx.coerce_raw(inst.ctx, c) for c in self._res.raw])
        lam = _lift_matrix(self._lam, ctx)
        found: dict[tuple, list[Scalar]] = {}
        for s in poly_roots(res, seed=self._seed):
            p0, p1 = [ctx.one, s, ctx.zero], [ctx.zero, ctx.zero, ctx.one]
            g = inst.pf.restrict_to_line(p0, p1).gcd(self._Q.restrict_to_line(p0, p1))
            for t in poly_roots(g, seed=self._seed):
                u = [ctx.one, s, t]
                for v in self._slice_vectors(u, lam):
                    found.setdefault(tuple(x.raw for x in v), v)
        points = list(found.values())
        logger.debug('Slice %d has %d points over %s', self._seed, len(points), ctx)
        return SliceCount(ext_degree, len(points), points, self._seed)

    def _slice_vectors(self, u: list[Scalar], lam: Matrix) -> list[list[Scalar]]:
        inst = self._inst
        kernel = inst.pencil(u).kernel_basis()
        meet = (lam.T @ kernel).kernel_basis()
        if meet.cols > 1:
            logger.warning('Kernel over %s meets the slice in dimension %d', u, meet.cols)
        out = []
        for a in meet.columns():
            v = normalize_point(kernel.apply(a), kernel.ctx)
            if not inst.membership(v).member or any(not x.is_zero for x in lam.T.apply(v)):
                raise PalatiniError('A slice point failed the membership check.')
            out.append(v)
        return out

    def __repr__(self):
        return f'SliceProblem(seed={self._seed}, {self._inst!r})'

    def __init__(self, inst: PalatiniInstance, seed: int):
        if inst.m != 3:
            raise RangeError(f'Slice counts need a surface scroll (m = 3), got m={inst.m}.')
        if inst.pf.is_zero:
            raise DegeneratePfaffian('The pfaffian of the pencil is identically zero.')
        self._inst = inst
        self._seed = seed
        self._lam = Matrix.random(inst.ctx, inst.n, 2, np.random.default_rng(seed))
        self._Q = augmented_pfaffian(inst, self._lam)
        if self._Q.is_zero:
            raise SamplingExhausted('The bordered pfaffian vanishes identically for this slice.')
        self._res = sylvester_resultant(_t_coefficients(inst.pf), _t_coefficients(self._Q))
        expected = inst.k * (inst.k - 1)
        if self._res.is_zero or self._res.degree != expected or self._res.gcd(self._res.derivative()).degree > 0:
            raise SamplingExhausted(f'Slice {seed} is not in general position.')


def slice_point_count(inst: PalatiniInstance, ext_degree: int = 1, seed: int = 0) -> SliceCount:
    """The points of X over F_{p^ext_degree} in the codimension-2 slice drawn from seed.

    :raises RangeError: Unless m = 3.
    :raises DegeneratePfaffian: If pf is identically zero.
    :raises SamplingExhausted: If the slice is not in general position.
    """
    return SliceProblem(inst, seed).points(ext_degree)


def slice_degree_evidence(inst: PalatiniInstance, max_ext: int = 6, slices: int = 10, seed: int = 0,
                          retries: Optional[int] = None) -> list[SliceEvidence]:
    """Point counts over F_{p^e}, e = 1..max_ext, for a number of seeded slices. A slice that is not in general
    position is re-drawn, at most retries times.

    :raises SamplingExhausted: If a slice is still degenerate after its re-draws.
    """
    retries = SLICE_RETRY_BUDGET if retries is None else retries
    degree = palatini_degree(inst.m, inst.k)
    rng = np.random.default_rng(seed)
    evidence = []
    for i in range(slices):
        problem = None
        for redraw in range(retries + 1):
            slice_seed = int(rng.integers(2 ** 31))
            try:
                problem = SliceProblem(inst, slice_seed)
                break
            except SamplingExhausted as ex:
                logger.info('Re-drawing slice %d: %s', i, ex)
        if problem is None:
            raise SamplingExhausted(f'Slice {i} was degenerate in {retries + 1} draws.')
        counts = {e: problem.points(e).count for e in range(1, max_ext + 1)}
        evidence.append(SliceEvidence(slice_seed, redraw, counts, any(c == degree for c in counts.values())))
    return evidence
