import warnings

import pytest
from scipy.special import comb

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Palatini import TangentStatus
from pyPalatini.Palatini.PalatiniError import (
    GenericityNotProbed, NoStabilization, RangeError, ResourceBudgetExceeded, WrongFieldKind,
)
from pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random
from pyPalatini.Palatini.Scroll.genericity import genericity_check
from pyPalatini.Palatini.Tangent.hilbert import (
    hilbert_function, ideal_piece, multiplication_matrix, syzygies_in_degree, tangent_dimension,
)


pytestmark = pytest.mark.filterwarnings('ignore::pyPalatini.Palatini.PalatiniError.GenericityNotProbed')


F1009 = FieldCtx.prime(1009)
F2003 = FieldCtx.prime(2003)


@pytest.fixture(scope='module')
def generic_33():
    return instance_random(3, 3, F1009, 31)


def test_minors_are_independent_in_degree_m(generic_33):
    piece = ideal_piece(generic_33, 3)
    assert len(piece.basis) == 56
    assert piece.generator_rows == 20
    assert piece.ideal_dim == 20
    assert piece.quotient_dim == 36


def test_below_degree_m_quotient_is_everything(generic_33):
    for d in range(3):
        piece = ideal_piece(generic_33, d)
        assert piece.quotient_dim == comb(6 + d - 1, d, exact=True)
        assert piece.ideal_dim == 0


def test_proportional_matrices_lose_minors(proportional_43):
    piece = ideal_piece(proportional_43, 4)
    assert piece.ideal_dim < 15
    assert piece.quotient_dim > 126 - 15


def test_hilbert_function_starts_with_polynomial_ring(generic_43):
    values = hilbert_function(generic_43, 4)
    assert values == [(0, 1), (1, 6), (2, 21), (3, 56), (4, 126 - 15)]


def test_multiplication_matrix_shape(generic_33):
    mult = multiplication_matrix(generic_33, 4)
    assert mult.shape == (20 * 6, comb(9, 4, exact=True))


def test_syzygies_in_degree_four(generic_33):
    syz = syzygies_in_degree(generic_33, 4)
    piece = ideal_piece(generic_33, 4)
    assert len(syz) == 20 * 6 - piece.ideal_dim
    assert len(syz) > 0
    for i in range(min(3, len(syz))):
        assert syz.expand(i, generic_33.minors).is_zero
        assert all(f.is_zero or f.degree == 1 for f in syz.relation(i))


def test_no_relations_in_degree_m_for_general_instance(generic_33):
    assert len(syzygies_in_degree(generic_33, 3)) == 0
    with pytest.raises(RangeError):
        syzygies_in_degree(generic_33, 2)


def test_graded_computations_need_a_prime_field():
    inst = instance_random(3, 3, FieldCtx.extension_of(5, 2), 1)
    with pytest.raises(WrongFieldKind):
        ideal_piece(inst, 3)
    with pytest.raises(WrongFieldKind):
        tangent_dimension(inst)


@pytest.mark.parametrize('seed, ctx', [(1, F1009), (2, F1009), (1, F2003), (2, F2003)])
def test_tangent_dimension_4_3(seed, ctx):
    inst = instance_random(4, 3, ctx, seed)
    report = tangent_dimension(inst)
    assert report.generator_count == 15
    assert report.quotient_dims[4] == 111
    assert report.computed_dim == 44
    assert report.expected_dim == 44
    assert report.status == TangentStatus.AGREE and report.agree
    assert [step.max_syzygy_degree for step in report.stabilization] == [5, 6, 7]
    assert report.stabilization[-1].dim == report.stabilization[-2].dim == 44


def test_tangent_dimension_is_independent_of_threads(generic_43):
    one = tangent_dimension(generic_43, 6, threads=1)
    three = tangent_dimension(generic_43, 6, threads=3)
    assert one.computed_dim == three.computed_dim
    assert one.stabilization == three.stabilization


def test_tangent_dimension_warns_without_genericity(generic_43):
    with pytest.warns(GenericityNotProbed):
        tangent_dimension(generic_43, 5)


def test_tangent_dimension_accepts_passing_report(generic_43):
    report = genericity_check(generic_43, trials=30, seed=3)
    assert report.passed
    with warnings.catch_warnings():
        warnings.simplefilter('error', GenericityNotProbed)
        tangent_dimension(generic_43, 5, report=report)


def test_single_cap_is_not_stabilized(generic_43):
    report = tangent_dimension(generic_43, 5)
    assert report.status == TangentStatus.NO_STABILIZATION
    assert not report.agree
    with pytest.raises(NoStabilization):
        tangent_dimension(generic_43, 5, strict=True)


def test_tangent_dimension_rejects_low_cap(generic_43):
    with pytest.raises(RangeError):
        tangent_dimension(generic_43, 4)


def test_tangent_dimension_respects_budget(generic_43):
    with pytest.raises(ResourceBudgetExceeded) as info:
        tangent_dimension(generic_43, budget_bytes=1000)
    assert info.value.budget == 1000


def test_tangent_report_serializes(generic_43):
    obj = tangent_dimension(generic_43, 6).model_dump(mode='json')
    assert obj['status'] in {s.value for s in TangentStatus}
    assert obj['instance_hash'] == generic_43.digest
    assert obj['stabilization'][0]['max_syzygy_degree'] == 5


@pytest.mark.slow
@pytest.mark.parametrize('m, k, expected', [(3, 4, 78), (4, 4, 96), (5, 4, 115)])
@pytest.mark.parametrize('seed, ctx', [(1, F1009), (2, F2003)])
def test_tangent_dimension_large_cases(m, k, expected, seed, ctx):
    report = tangent_dimension(instance_random(m, k, ctx, seed))
    assert report.computed_dim == expected
    assert report.status == TangentStatus.AGREE


def test_ideal_piece_warns_without_genericity(generic_43):
    with pytest.warns(GenericityNotProbed, match='Ideal piece'):
        ideal_piece(generic_43, 4)
    with pytest.warns(GenericityNotProbed, match='Hilbert function'):
        hilbert_function(generic_43, 2)


def test_ideal_piece_accepts_passing_report(generic_43):
    report = genericity_check(generic_43, trials=30, seed=3)
    assert report.passed
    with warnings.catch_warnings():
        warnings.simplefilter('error', GenericityNotProbed)
        piece = ideal_piece(generic_43, 4, report=report)
        assert hilbert_function(generic_43, 4, report=report)[4] == (4, piece.quotient_dim)
