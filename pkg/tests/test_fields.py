from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import Poly, symbols, GF

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Fields.UniPoly import UniPoly, poly_roots
from pyPalatini.Palatini.Fields import fpx
from pyPalatini.Palatini.Palatini import ZERO_POLY_DEGREE
from pyPalatini.Palatini.PalatiniError import (
    DivisionByZero, FieldMismatch, NonPrimeModulus, RangeError, WrongFieldKind,
)


F1009 = FieldCtx.prime(1009)


def test_prime_field_arithmetic():
    f7 = FieldCtx.prime(7)
    assert f7(3) * f7(5) == f7(1)
    assert f7(3).inverse() == f7(5)
    assert f7(2) - f7(5) == 4
    assert -f7(0) == 0


@pytest.mark.parametrize('p', [1, 0, -5, 1000, 2 ** 31 + 11, 2 ** 31])
def test_non_prime_modulus_rejected(p):
    with pytest.raises(NonPrimeModulus):
        FieldCtx.prime(p)


def test_zero_inverse():
    with pytest.raises(DivisionByZero):
        F1009.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        F1009(1) / F1009(0)
    with pytest.raises(DivisionByZero):
        FieldCtx.rational().zero.inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        F1009(1) + FieldCtx.prime(1013)(1)


@given(st.integers(min_value=1, max_value=1008))
def test_inverse_roundtrip(a):
    x = F1009(a)
    assert x * x.inverse() == 1


@pytest.mark.parametrize('p,e', [(2, 2), (2, 3), (3, 4), (5, 3), (1009, 2)])
def test_extension_field_is_a_field(p, e):
    ctx = FieldCtx.extension_of(p, e, seed=3)
    assert ctx.order == p ** e
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = ctx.random_nonzero(rng)
        assert a * a.inverse() == ctx.one
        # Frobenius fixes the prime subfield and has order e
        assert a ** ctx.order == a
    assert ctx(p - 1) + ctx.one == ctx.zero


def test_extension_modulus_is_deterministic_per_seed():
    a = FieldCtx.extension_of(1009, 3, seed=7)
    b = FieldCtx.extension_of(1009, 3, seed=7)
    assert a == b and hash(a) == hash(b)
    assert FieldCtx.from_json(a.json) == a


def test_irreducibility_rejects_products_without_roots():
    # (x^2 + x + 1)(x^3 + x + 1) over F_2 has no roots but is reducible
    f = fpx.mul([1, 1, 1], [1, 1, 0, 1], 2)
    assert not fpx.is_irreducible(f, 2)
    assert fpx.is_irreducible([1, 1, 0, 1], 2)


def test_small_extension_enumerates_every_element():
    ctx = FieldCtx.extension_of(2, 2)
    elements = list(ctx.elements())
    assert len(set(elements)) == 4
    nonzero = [x for x in elements if x]
    assert all(x ** 3 == ctx.one for x in nonzero)


def test_rational_field():
    q = FieldCtx.rational()
    assert q('1/3') + q(Fraction(2, 3)) == q.one
    assert q(3).to_json() == '3/1'
    assert q.order is None
    with pytest.raises(WrongFieldKind):
        next(q.elements())


def test_unipoly_division_and_gcd():
    a = UniPoly(F1009, [1, 0, 1])  # t^2 + 1
    b = UniPoly(F1009, [-1, 1])  # t - 1
    prod = a * b
    q, r = divmod(prod, b)
    assert q == a and r.is_zero
    assert prod.gcd(a) == a.monic()
    assert UniPoly(F1009, []).degree == ZERO_POLY_DEGREE
    with pytest.raises(DivisionByZero):
        divmod(a, UniPoly(F1009, []))


def test_poly_roots_of_split_polynomial():
    roots = [F1009(r) for r in (3, 17, 500, 1008)]
    f = UniPoly(F1009, [1])
    for r in roots:
        f = f * UniPoly(F1009, [-r, 1])
    f = f * UniPoly(F1009, [1, 0, 1])  # t^2 + 1 has roots since 1009 = 1 mod 4
    found = poly_roots(f)
    assert len(found) == 6
    assert all(f(r) == 0 for r in found)
    assert [int(r) for r in found] == sorted(int(r) for r in found)


def test_poly_roots_repeated_roots_are_reported_once():
    f = UniPoly(F1009, [-2, 1]) * UniPoly(F1009, [-2, 1]) * UniPoly(F1009, [5, 1])
    assert sorted(int(r) for r in poly_roots(f)) == [2, 1004]


def test_poly_roots_matches_sympy_factorization():
    t = symbols('t')
    coeffs = [1, 4, 0, 7, 3, 2, 11]
    f = UniPoly(F1009, list(reversed(coeffs)))
    expected = sorted(
        int(-g.all_coeffs()[1]) % 1009
        for g, _ in Poly(coeffs, t, domain=GF(1009)).factor_list()[1]
        if g.degree() == 1
    )
    assert sorted(int(r) for r in poly_roots(f)) == expected


def test_poly_roots_over_extension_and_char_two():
    for p, e in [(1009, 2), (2, 4), (3, 3)]:
        ctx = FieldCtx.extension_of(p, e, seed=1)
        rng = np.random.default_rng(5)
        planted = {ctx.random(rng) for _ in range(3)}
        f = UniPoly(ctx, [1])
        for r in planted:
            f = f * UniPoly(ctx, [-r, 1])
        assert set(poly_roots(f, seed=2)) == planted


def test_poly_roots_rejects_zero_and_rationals():
    with pytest.raises(RangeError):
        poly_roots(UniPoly(F1009, []))
    with pytest.raises(WrongFieldKind):
        poly_roots(UniPoly(FieldCtx.rational(), [1, 1]))
    assert poly_roots(UniPoly(F1009, [5])) == []


@pytest.mark.parametrize('ctx', [F1009, FieldCtx.prime(2), FieldCtx.extension_of(3, 4, seed=2), FieldCtx.rational()])
def test_subtraction_and_division_undo_addition_and_multiplication(ctx):
    rng = np.random.default_rng(13)
    for _ in range(200):
        a, b = ctx.random(rng), ctx.random(rng)
        assert (a + b) - b == a
        if b:
            assert (a * b) * b.inverse() == a
            assert (a * b) / b == a


def test_rational_random_draws_fractions():
    q = FieldCtx.rational()
    rng = np.random.default_rng(4)
    draws = [q.random(rng).raw for _ in range(200)]
    assert all(isinstance(x, Fraction) for x in draws)
    assert all(abs(x.numerator) <= 16 and 1 <= x.denominator <= 16 for x in draws)
    assert any(x.denominator != 1 for x in draws)


@pytest.mark.parametrize('ctx', [
    FieldCtx.prime(7), FieldCtx.prime(101), FieldCtx.extension_of(5, 2, seed=4), FieldCtx.extension_of(2, 4, seed=1),
])
def test_poly_roots_agrees_with_exhaustive_search(ctx):
    rng = np.random.default_rng(ctx.order)
    elements = list(ctx.elements())
    for degree in range(1, 7):
        for _ in range(4):
            f = UniPoly(ctx, [ctx.random(rng) for _ in range(degree)] + [ctx.random_nonzero(rng)])
            expected = {x for x in elements if f(x) == 0}
            found = poly_roots(f, seed=degree)
            assert len(found) == len(expected)
            assert set(found) == expected


def test_poly_roots_of_t_squared_plus_one():
    assert [int(r) for r in poly_roots(UniPoly(FieldCtx.prime(5), [1, 0, 1]))] == [2, 3]
    assert poly_roots(UniPoly(FieldCtx.prime(7), [1, 0, 1])) == []


def test_extension_of_extension_embeds_and_descends():
    f8 = FieldCtx.extension_of(2, 3, seed=1)
    f64 = f8.extension(2)
    assert f64.order == 64 and f64.subfield == f8
    assert f8.extension(1) is f8
    elements = list(f8.elements())
    for a in elements:
        for b in elements:
            assert f64(a) + f64(b) == f64(a + b)
            assert f64(a) * f64(b) == f64(a * b)
        assert f64.descend_to(f8, f64(a).raw) == a.raw
    # the image of F_8 is the fixed field of x -> x^8
    outside = [x for x in f64.elements() if x ** 8 != x]
    assert len(outside) == 56
    with pytest.raises(WrongFieldKind):
        f64.descend_to(f8, outside[0].raw)
    with pytest.raises(FieldMismatch):
        f64.descend_to(FieldCtx.extension_of(2, 2), f64.one.raw)
    with pytest.raises(RangeError):
        f8.extension(0)
