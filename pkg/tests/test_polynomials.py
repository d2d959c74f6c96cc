from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import Matrix as SymMatrix, Poly, symbols

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Linalg.Matrix import Matrix
from pyPalatini.Palatini.Polynomials.LinFormMatrix import LinFormMatrix
from pyPalatini.Palatini.Polynomials.MonomialBasis import monomial_basis
from pyPalatini.Palatini.Polynomials.MultiPoly import FormSystem, MultiPoly, poly_eval
from pyPalatini.Palatini.Polynomials.interpolate import interpolate_form, working_field
from pyPalatini.Palatini.Palatini import ZERO_POLY_DEGREE
from pyPalatini.Palatini.PalatiniError import DependentBasePoints, FieldTooSmall, NotSkewSymmetric
from pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random


F1009 = FieldCtx.prime(1009)


def _random_skew_pencil(ctx, n, nvars, seed):
    rng = np.random.default_rng(seed)
    mats = [Matrix.random_skew(ctx, n, rng) for _ in range(nvars)]
    return LinFormMatrix(ctx, [[[mats[v][i, j] for v in range(nvars)] for j in range(n)] for i in range(n)])


def test_monomial_basis_order_and_size():
    basis = monomial_basis(3, 2)
    assert basis.exponents == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(monomial_basis(8, 5)) == 792
    assert basis.shift_indices((1, 0, 0), monomial_basis(3, 3)).tolist()[:2] == [0, 1]


def test_zero_polynomial_degree():
    assert MultiPoly(F1009, 3).degree == ZERO_POLY_DEGREE
    assert MultiPoly(F1009, 2, {(1, 1): 0}).is_zero


def test_arithmetic_and_evaluation():
    x, y = MultiPoly.variable(F1009, 2, 0), MultiPoly.variable(F1009, 2, 1)
    f = (x + y) ** 3 - x * x * x
    assert f.degree == 3 and f.is_homogeneous
    assert poly_eval(f, [F1009(2), F1009(5)]) == 7 ** 3 - 8
    assert f.derivative(1)([F1009(1), F1009(1)]) == 3 * 4


@given(st.lists(st.integers(0, 1008), min_size=3, max_size=3), st.lists(st.integers(0, 1008), min_size=3, max_size=3))
def test_restrict_to_line_agrees_with_evaluation(p0, p1):
    x = [MultiPoly.variable(F1009, 3, i) for i in range(3)]
    f = x[0] * x[1] * x[2] + x[0] ** 3 * 5 + x[2] * x[2] * x[1] * 7
    a, b = [F1009(v) for v in p0], [F1009(v) for v in p1]
    try:
        g = f.restrict_to_line(a, b)
    except DependentBasePoints:
        return
    assert g.degree <= 3
    for t in (0, 1, 2, 1000):
        assert g(F1009(t)) == f([ai + t * bi for ai, bi in zip(a, b)])


def test_restrict_to_line_rejects_dependent_points():
    f = MultiPoly.variable(F1009, 2, 0)
    with pytest.raises(DependentBasePoints):
        f.restrict_to_line([F1009(1), F1009(2)], [F1009(2), F1009(4)])


def test_json_roundtrip_is_in_graded_lex_order():
    x = [MultiPoly.variable(F1009, 2, i) for i in range(2)]
    f = x[1] * x[1] + x[0] * x[1] * 3 + MultiPoly.constant(F1009, 2, 4)
    obj = f.to_json()
    assert [t['exponents'] for t in obj['terms']] == [[1, 1], [0, 2], [0, 0]]
    assert MultiPoly.from_json(obj) == f


def test_symbolic_pfaffian_matches_sympy():
    pencil = _random_skew_pencil(F1009, 4, 3, seed=2)
    pf = pencil.symbolic_pfaffian()
    assert pf.degree == 2 and pf.is_homogeneous
    u = symbols('u0:3')
    sym = SymMatrix(4, 4, lambda i, j: sum(int(pencil.raw[i][j][v]) * u[v] for v in range(3)))
    # Pf^2 = det for a 4x4 skew matrix
    det = Poly(sym.det(), *u)
    pf2 = pf * pf
    for monom, coeff in det.terms():
        assert int(pf2.coefficient(monom)) == int(coeff) % 1009
    assert len(pf2.terms) == len([c for _, c in det.terms() if int(c) % 1009])


@pytest.mark.parametrize('n,nvars', [(4, 3), (6, 3), (6, 4)])
def test_pfaffian_squared_is_symbolic_determinant(n, nvars):
    pencil = _random_skew_pencil(F1009, n, nvars, seed=n + nvars)
    pf = pencil.symbolic_pfaffian()
    assert pf * pf == pencil.symbolic_det()


def test_symbolic_pfaffian_over_tiny_field_uses_extension():
    f3 = FieldCtx.prime(3)
    pencil = _random_skew_pencil(f3, 8, 3, seed=9)
    pf = pencil.symbolic_pfaffian()
    assert pf.ctx == f3
    rng = np.random.default_rng(1)
    for _ in range(5):
        u = [f3.random(rng) for _ in range(3)]
        assert pf(u) == pencil.evaluate(u).pfaffian()


def test_symbolic_pfaffian_over_small_extension_field_lifts():
    f8 = FieldCtx.extension_of(2, 3, seed=1)
    inst = instance_random(2, 8, f8, 1)
    pf = inst.pf
    assert pf.ctx == f8
    assert not pf.is_zero and pf.is_homogeneous and pf.degree == 8
    elements = list(f8.elements())
    for u in [(a, b) for a in elements for b in elements if a or b]:
        assert pf(u) == inst.pencil(u).pfaffian()


def test_working_field_of_small_extension():
    f8 = FieldCtx.extension_of(2, 3, seed=1)
    work = working_field(f8, 8)
    assert work.order == 64 and work.subfield == f8
    assert working_field(f8, 7) is f8
    with pytest.raises(FieldTooSmall):
        working_field(f8, 8, lift=False)
    with pytest.raises(FieldTooSmall):
        interpolate_form(f8, 2, 8, lambda u: u[0] ** 8, lift=False)


def test_symbolic_pfaffian_rejects_non_skew():
    pencil = LinFormMatrix(F1009, [[[1], [0]], [[0], [0]]])
    with pytest.raises(NotSkewSymmetric):
        pencil.symbolic_pfaffian()


def test_minors_max_agree_with_numeric_minors():
    rng = np.random.default_rng(12)
    coeffs = [[[int(rng.integers(0, 1009)) for _ in range(6)] for _ in range(6)] for _ in range(3)]
    forms = LinFormMatrix(F1009, coeffs)
    minors = forms.minors_max()
    assert len(minors) == 20
    system = FormSystem(minors)
    v = [F1009(int(a)) for a in rng.integers(0, 1009, size=6)]
    numeric = forms.evaluate(v)
    for value, cols in zip(system.evaluate(v), combinations(range(6), 3)):
        sub = Matrix(F1009, [[numeric[i, j] for j in cols] for i in range(3)])
        assert value == sub.det()
