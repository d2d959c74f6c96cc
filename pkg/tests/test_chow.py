import pytest
from hypothesis import given, strategies as st

from pyPalatini.Palatini.Chow.ChowClass import ChowClass
from pyPalatini.Palatini.Chow.degree import (
    chern_degree, degree_table, expected_tangent_dim, palatini_degree, reference_h1, scroll_invariants,
)
from pyPalatini.Palatini.PalatiniError import RangeError


@pytest.mark.parametrize('m,k,degree', [(3, 3, 6), (4, 3, 7), (3, 4, 12), (2, 2, 2)])
def test_palatini_degree_examples(m, k, degree):
    assert palatini_degree(m, k) == degree
    assert chern_degree(m, k) == degree


@pytest.mark.parametrize('k', range(2, 9))
def test_lines_have_degree_zero(k):
    assert palatini_degree(1, k) == 0
    assert chern_degree(1, k) == 0


@pytest.mark.parametrize('k', range(2, 9))
def test_hypersurface_case(k):
    assert chern_degree(2 * k - 1, k) == palatini_degree(2 * k - 1, k) == 2 * k - 2


def test_formula_and_chern_class_agree_on_the_whole_range():
    rows = degree_table(range(1, 12), range(2, 11))
    assert all(row.agree for row in rows)
    assert all(1 <= row.m <= 2 * row.k for row in rows)
    assert [(r.k, r.m) for r in rows] == sorted((r.k, r.m) for r in rows)
    for k in range(2, 11):
        for m in range(2, k + 2):
            assert palatini_degree(m, k) == chern_degree(m, k)


@pytest.mark.parametrize('m,k', [(0, 3), (7, 3), (1, 0)])
def test_degree_range(m, k):
    with pytest.raises(RangeError):
        palatini_degree(m, k)
    with pytest.raises(RangeError):
        chern_degree(m, k)


coeffs = st.lists(st.integers(-50, 50), min_size=1, max_size=7)


@given(coeffs, coeffs, coeffs)
def test_chow_ring_axioms(a, b, c):
    x, y, z = ChowClass(6, a), ChowClass(6, b), ChowClass(6, c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


def test_truncation_and_inverse():
    h = ChowClass.hyperplane(4)
    assert h ** 5 == 0
    assert h ** 4 != 0
    inv = (1 + 2 * h).inverse()
    assert inv.coeffs == (1, -2, 4, -8, 16)
    assert (1 + 2 * h) * inv == 1
    with pytest.raises(RangeError):
        (2 + h).inverse()


def test_reference_h1():
    assert reference_h1(4, 5) == 4
    assert reference_h1(5, 5) == 0
    assert reference_h1(4, 4) == 0
    assert reference_h1(4, 6) == 2 * 4 * 3 * 2 // 3
    with pytest.raises(RangeError):
        reference_h1(3, 3)
    with pytest.raises(RangeError):
        reference_h1(5, 3)


def test_expected_tangent_dimensions():
    assert expected_tangent_dim(4, 3) == 44
    assert expected_tangent_dim(4, 4) == 96
    assert expected_tangent_dim(3, 4) == 78
    assert expected_tangent_dim(5, 4) == 115
    assert expected_tangent_dim(3, 3) is None


def test_scroll_invariants():
    inv = scroll_invariants(4, 3)
    assert (inv.dim, inv.codim, inv.degree, inv.grassmannian_dim) == (2 + 1, 2, 7, 44)
    assert inv.main_theorem_range
    inv = scroll_invariants(3, 4)
    assert (inv.base_curve_genus, inv.bundle_degree, inv.expected_h0_normal) == (3, 12, 78)
    assert inv.expected_h1_normal == 0
    assert scroll_invariants(3, 3).expected_h1_normal is None
    with pytest.raises(RangeError):
        scroll_invariants(6, 3)
