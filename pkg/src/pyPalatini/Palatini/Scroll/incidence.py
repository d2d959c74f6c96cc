"""The incidence correspondence between the pfaffian hypersurface Y in P(U) and the scroll X in P(V).

A point u of Y carries the kernel of M(u), generically 2-dimensional; its projectivization is a line of X. In the
other direction a point v of X determines u as the kernel of N(v), uniquely when v lies off D_{m-2}.
"""
import logging
from typing import Any, NamedTuple, Optional, Sequence

import numpy as np

from .IncidencePoint import IncidencePoint
from .PalatiniInstance import PalatiniInstance, normalize_point
from ..Fields.FieldCtx import FieldCtx, PrimeFieldCtx
from ..Fields.Scalar import Scalar
from ..Fields.UniPoly import poly_roots
from ..Palatini import SAMPLING_LINE_BUDGET
from ..PalatiniError import (
    CorankNotTwo, DegeneratePfaffian, FiberNotUnique, NotOnX, NotOnY, PalatiniError, SamplingExhausted,
    WrongFieldKind,
)
from ..Polynomials.MultiPoly import _dependent, _lift_point


logger = logging.getLogger(__name__)


def sampling_field(inst: PalatiniInstance, ext_degree: int) -> FieldCtx:
    """The field points are sampled over: the field of the instance, or its extension of the given degree.

    :raises WrongFieldKind: If an extension is requested of a field that is not prime.
    """
    if ext_degree == 1:
        return inst.ctx
    if not isinstance(inst.ctx, PrimeFieldCtx):
        raise WrongFieldKind(f'Extensions are only built over prime fields, not {inst.ctx}.')
    return inst.ctx.extension(ext_degree)


def _random_point(ctx: FieldCtx, n: int, rng: np.random.Generator) -> list[Scalar]:
    return [ctx.random(rng) for _ in range(n)]


def sample_Y(inst: PalatiniInstance, ext_degree: int = 1, count: int = 10, seed: int = 0,
             strict: bool = True) -> list[list[Scalar]]:
    """Sample points of the pfaffian hypersurface Y by restricting pf to seeded random lines p0 + t * p1 and finding
    the roots over F_{p^ext_degree}. When pf(p1) = 0 the point at infinity p1 of the line is taken too. Points are
    normalized and deduplicated projectively, and returned in the order found.

    :param PalatiniInstance inst: The instance.
    :param int ext_degree: Degree of the extension of the base field to sample over.
    :param int count: The number of points wanted.
    :param int seed: Seed of the line choices and root splitting.
    :param bool strict: Raise if fewer than count points are found; otherwise return what was found.
    :raises DegeneratePfaffian: If pf is identically zero.
    :raises SamplingExhausted: In strict mode, if the line budget is spent first.
    """
    if inst.pf.is_zero:
        raise DegeneratePfaffian('The pfaffian of the pencil is identically zero; Y is the whole space.')
    ctx = sampling_field(inst, ext_degree)
    rng = np.random.default_rng(seed)
    budget = max(64, SAMPLING_LINE_BUDGET * count)
    found: dict[tuple, list[Scalar]] = {}
    lines = 0
    while len(found) < count and lines < budget:
        lines += 1
        p0, p1 = _random_point(ctx, inst.m, rng), _random_point(ctx, inst.m, rng)
        if _dependent(ctx, [x.raw for x in p0], [x.raw for x in p1]):
            continue
        g = inst.pf.restrict_to_line(p0, p1)
        candidates = []
        if g.is_zero:
            candidates.append(p0)
        else:
            for t in poly_roots(g, seed=int(rng.integers(2 ** 31))):
                candidates.append([a + t * b for a, b in zip(p0, p1)])
            if g.degree < inst.k:
                candidates.append(p1)
        for u in candidates:
            u = normalize_point(u, ctx)
            found.setdefault(tuple(x.raw for x in u), u)
            if len(found) == count:
                break
    logger.debug('Sampled %d points of Y over %s from %d lines', len(found), ctx, lines)
    if strict and len(found) < count:
        raise SamplingExhausted(f'Found {len(found)} of {count} points of Y in {lines} lines over {ctx}.')
    return list(found.values())


def fiber(inst: PalatiniInstance, u: Sequence[Any]) -> IncidencePoint:
    """The kernel of M(u) at a point of Y.

    :raises NotOnY: If pf(u) != 0.
    :raises ZeroVector: If u is zero.
    """
    u = normalize_point(u, inst.ctx)
    mu = inst.pencil(u)
    if not mu.pfaffian().is_zero:
        raise NotOnY('The pfaffian does not vanish at the point.')
    kernel = mu.kernel_basis()
    if kernel.cols > 2:
        logger.info('Point of Y with corank %d, in D_{2k-4} of the pencil', kernel.cols)
    return IncidencePoint(u, kernel)


LinePointCheck = NamedTuple('LinePointCheck', [
    ('v', list), ('member', bool), ('corank', int), ('minors_vanish', bool),
])
"""The checks run at one point of a fiber line.
"""


ScrollLineRecord = NamedTuple('ScrollLineRecord', [
    ('u', list), ('checks', list), ('all_pass', bool), ('full_line', bool),
])
"""Verification record of one fiber line. ``full_line`` is set when every point passed and more points were checked
than the degree m of the minors, so that the minors vanish on the whole line.
"""


def line_points(ipt: IncidencePoint, count: int) -> list[list[Scalar]]:
    """Distinct points of the projective line spanned by the two kernel columns: the columns themselves, then
    col0 + t * col1 for successive nonzero field elements t. Fewer than count points are returned only when the field
    has fewer than count - 1 elements.
    """
    ctx = ipt.ctx
    c0, c1 = ipt.kernel.column(0), ipt.kernel.column(1)
    points = [c0, c1]
    limit = min(count, ctx.order + 1) if ctx.is_finite else count
    t = 1
    while len(points) < limit:
        s = ctx.element(t)
        points.append([a + s * b for a, b in zip(c0, c1)])
        t += 1
    return points


def scroll_line(inst: PalatiniInstance, ipt: IncidencePoint, count: Optional[int] = None) -> ScrollLineRecord:
    """Check that the line of X over a corank-2 point of Y lies on X: at count (default k + 1) points of the line,
    membership holds and every maximal minor of F vanishes.

    :raises CorankNotTwo: If the fiber is not 2-dimensional.
    """
    if ipt.corank != 2:
        raise CorankNotTwo(f'The fiber has corank {ipt.corank}; lines of the scroll need corank 2.', ipt.corank)
    count = inst.k + 1 if count is None else count
    checks = []
    for v in line_points(ipt, count):
        member, corank = inst.membership(v)
        minors_vanish = all(x.is_zero for x in inst.minor_system.evaluate(v))
        checks.append(LinePointCheck(v, member, corank, minors_vanish))
    all_pass = all(c.member and c.minors_vanish for c in checks)
    return ScrollLineRecord(ipt.u, checks, all_pass, all_pass and len(checks) > inst.m)


def fiber_of_x(inst: PalatiniInstance, v: Sequence[Any]) -> list[Scalar]:
    """The unique point u of Y whose fiber contains v, as the normalized kernel vector of N(v).

    :raises NotOnX: If N(v) has full rank.
    :raises FiberNotUnique: If the kernel of N(v) has dimension 2 or more, i.e. v lies in D_{m-2}.
    :raises ZeroVector: If v is zero.
    """
    target, _ = _lift_point(inst.ctx, v)
    v = normalize_point(v, target)
    kernel = inst.phi_matrix(v).kernel_basis()
    if kernel.cols == 0:
        raise NotOnX('The point does not lie on the scroll.')
    if kernel.cols > 1:
        raise FiberNotUnique(f'The point lies on {kernel.cols} independent fibers.', kernel.cols)
    u = normalize_point(kernel.column(0), target)
    if not all(x.is_zero for x in inst.pencil(u).apply(v)):
        raise PalatiniError('M(u) v is nonzero for the recovered fiber point.')
    return u


def random_kernel_vector(ipt: IncidencePoint, rng: np.random.Generator) -> list[Scalar]:
    """A random nonzero vector of ker M(u), normalized.
    """
    ctx = ipt.ctx
    while True:
        coeffs = [ctx.random(rng) for _ in range(ipt.corank)]
        if any(not c.is_zero for c in coeffs):
            return normalize_point(ipt.combination(coeffs), ctx)


def sample_incidence(inst: PalatiniInstance, count: int, seed: int = 0,
                     ext_degree: int = 1) -> list[tuple[IncidencePoint, list[Scalar]]]:
    """Sample pairs (fiber over u, point v of X in that fiber): points of Y from :func:`sample_Y` (non-strict), each
    with a random vector of its kernel. May return fewer than count pairs when Y has few points over the field.

    :raises DegeneratePfaffian: If pf is identically zero.
    """
    rng = np.random.default_rng([seed, 1])
    pairs = []
    for u in sample_Y(inst, ext_degree, count, seed, strict=False):
        ipt = fiber(inst, u)
        pairs.append((ipt, random_kernel_vector(ipt, rng)))
    return pairs
