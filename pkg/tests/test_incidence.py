import numpy as np
import pytest

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Fields.UniPoly import poly_roots
from pyPalatini.Palatini.Linalg.Matrix import Matrix
from pyPalatini.Palatini.PalatiniError import (
    CorankNotTwo, DegeneratePfaffian, FiberNotUnique, NotOnX, NotOnY, SamplingExhausted, WrongFieldKind,
)
from pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random, membership_X
from pyPalatini.Palatini.Scroll.incidence import fiber, fiber_of_x, line_points, sample_Y, scroll_line


F101 = FieldCtx.prime(101)
F1009 = FieldCtx.prime(1009)


def test_lines_meet_y_in_at_most_k_points():
    inst = instance_random(3, 3, F101, 1)
    rng = np.random.default_rng(0)
    for _ in range(20):
        p0 = [F101.random(rng) for _ in range(3)]
        p1 = [F101.random(rng) for _ in range(3)]
        g = inst.pf.restrict_to_line(p0, p1)
        assert len(poly_roots(g)) <= 3


def test_sampled_points_lie_on_y(generic_43):
    points = sample_Y(generic_43, 1, 100, seed=1)
    assert len(points) == 100
    assert len({tuple(x.raw for x in u) for u in points}) == 100
    for u in points:
        assert generic_43.pf(u).is_zero
        assert next(x for x in u if not x.is_zero) == 1


def test_sampling_is_deterministic(generic_43):
    first = sample_Y(generic_43, 1, 10, seed=2)
    assert sample_Y(generic_43, 1, 10, seed=2) == first
    assert sample_Y(generic_43, 1, 10, seed=3) != first


def test_sampling_over_an_extension():
    inst = instance_random(3, 3, FieldCtx.prime(5), 4)
    points = sample_Y(inst, 2, 10, seed=4)
    assert all(u[0].ctx.order == 25 for u in points)
    assert all(inst.pf(u).is_zero for u in points)


def test_sampling_extension_needs_a_prime_field():
    inst = instance_random(3, 3, FieldCtx.extension_of(5, 2), 5)
    with pytest.raises(WrongFieldKind):
        sample_Y(inst, 2, 5, seed=5)


def test_block_instance_points_lie_on_coordinate_planes(block_101):
    for u in sample_Y(block_101, 1, 30, seed=6):
        assert any(x.is_zero for x in u)


def test_sampling_rejects_degenerate_pfaffian(common_kernel_43):
    with pytest.raises(DegeneratePfaffian):
        sample_Y(common_kernel_43, 1, 5, seed=7)


def test_sampling_exhausts_small_curves(block_5):
    # three lines in the plane over F_5 carry 15 points
    assert len(sample_Y(block_5, 1, 20, seed=8, strict=False)) == 15
    with pytest.raises(SamplingExhausted):
        sample_Y(block_5, 1, 20, seed=8)


def test_fiber_of_planted_block(block_101):
    ipt = fiber(block_101, [0, 1, 1])
    assert ipt.corank == 2
    assert ipt.kernel.columns() == [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]
    with pytest.raises(NotOnY):
        fiber(block_101, [1, 1, 1])


@pytest.mark.parametrize('m, k', [(3, 4), (4, 3), (4, 4), (5, 4)])
def test_incidence_correspondence(m, k):
    inst = instance_random(m, k, F1009, 100 + 10 * m + k)
    rng = np.random.default_rng(9)
    for u in sample_Y(inst, 1, 100, seed=9):
        ipt = fiber(inst, u)
        assert ipt.corank == 2
        assert inst.pencil(u) @ ipt.kernel == Matrix.zeros(F1009, inst.n, 2)
        a, b = F1009.random(rng), F1009.random_nonzero(rng)
        v = ipt.combination([a, b])
        for i in range(inst.n):
            total = sum(inst.system.entry(l, i, j) * int(v[j]) * int(u[l]) for j in range(inst.n) for l in range(m))
            assert total % 1009 == 0
        assert fiber_of_x(inst, v) == u


@pytest.mark.parametrize('m, k', [(3, 4), (4, 3)])
def test_scroll_lines_lie_on_the_scroll(m, k):
    inst = instance_random(m, k, F1009, 200 + 10 * m + k)
    for u in sample_Y(inst, 1, 20, seed=10):
        record = scroll_line(inst, fiber(inst, u))
        assert len(record.checks) == k + 1
        assert record.all_pass
        assert record.full_line == (k + 1 > m)
        assert all(c.corank == 1 for c in record.checks)


def test_scroll_line_endpoints_are_kernel_columns(generic_34):
    ipt = fiber(generic_34, sample_Y(generic_34, 1, 1, seed=11)[0])
    points = line_points(ipt, 5)
    assert points[:2] == ipt.kernel.columns()
    assert all(membership_X(generic_34, v).member for v in points[:2])


def test_scroll_line_needs_corank_two(block_101):
    ipt = fiber(block_101, [0, 0, 1])
    assert ipt.corank == 4
    with pytest.raises(CorankNotTwo) as info:
        scroll_line(block_101, ipt)
    assert info.value.corank == 4


def test_fiber_of_x_planted_failures(common_kernel_43, generic_43):
    with pytest.raises(FiberNotUnique) as info:
        fiber_of_x(common_kernel_43, [1, 0, 0, 0, 0, 0])
    assert info.value.nullity == 4
    rng = np.random.default_rng(12)
    v = [F1009.random(rng) for _ in range(6)]
    assert not membership_X(generic_43, v).member
    with pytest.raises(NotOnX):
        fiber_of_x(generic_43, v)
