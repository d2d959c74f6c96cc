import json

import numpy as np
import pytest

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Linalg.Matrix import Matrix
from pyPalatini.Palatini.Palatini import EvidenceKind, StratumTarget
from pyPalatini.Palatini.PalatiniError import (
    InstanceFormatError, NotSkewSymmetric, RangeError, ShapeError, ZeroVector,
)
from pyPalatini.Palatini.Scroll.PalatiniInstance import PalatiniInstance, instance_random, membership_X
from pyPalatini.Palatini.Scroll.SkewSystem import SkewSystem
from pyPalatini.Palatini.Scroll.genericity import genericity_check, rank_stratum_probe
from pyPalatini.Palatini.Scroll.incidence import sample_incidence


F101 = FieldCtx.prime(101)
F1009 = FieldCtx.prime(1009)


def _random_vector(ctx, n, rng):
    return [ctx.random(rng) for _ in range(n)]


# SkewSystem


def test_skew_system_validation():
    rng = np.random.default_rng(0)
    a = Matrix.random_skew(F101, 4, rng)
    with pytest.raises(ShapeError):
        SkewSystem(F101, [a, Matrix.random_skew(F101, 6, rng)])
    with pytest.raises(ShapeError):
        SkewSystem(F101, [Matrix.random_skew(F101, 3, rng)])
    with pytest.raises(NotSkewSymmetric):
        SkewSystem(F101, [a, Matrix.random(F101, 4, 4, rng)])
    with pytest.raises(RangeError):
        SkewSystem(F101, [Matrix.random_skew(F101, 4, rng) for _ in range(4)])


def test_skew_system_injectivity(proportional_43, generic_43):
    assert generic_43.system.is_injective
    assert not proportional_43.system.is_injective


# Construction and serialization


def test_instance_random_pfaffian_degree():
    inst = instance_random(3, 3, F101, 1)
    assert inst.pf.nvars == 3
    assert inst.pf.degree == 3 and inst.pf.is_homogeneous
    assert inst.M.is_skew()
    assert (inst.F.rows, inst.F.cols, inst.F.nvars) == (3, 6, 6)


@pytest.mark.parametrize('m, k, ctx', [(5, 2, F101), (4, 1, F101), (0, 3, F101), (3, 3, FieldCtx.prime(3))])
def test_instance_random_rejects_ranges(m, k, ctx):
    with pytest.raises(RangeError):
        instance_random(m, k, ctx, 0)


def test_instance_random_is_deterministic():
    assert instance_random(4, 3, F1009, 7).dumps() == instance_random(4, 3, F1009, 7).dumps()
    assert instance_random(4, 3, F1009, 7) != instance_random(4, 3, F1009, 8)


@pytest.mark.parametrize('ctx', [F1009, FieldCtx.extension_of(5, 2), FieldCtx.rational()])
def test_json_round_trip(ctx):
    inst = instance_random(3, 3, ctx, 5)
    text = inst.dumps()
    back = PalatiniInstance.loads(text)
    assert back == inst
    assert back.dumps() == text
    assert back.digest == inst.digest


def test_json_stores_lower_triangles(generic_43):
    obj = generic_43.to_json()
    assert obj['field'] == {'p': 1009, 'e': 1}
    assert len(obj['matrices']) == 4
    assert all(len(entries) == 15 for entries in obj['matrices'])
    assert obj['matrices'][0][0] == int(generic_43.system.entry(0, 1, 0))
    assert all(type(v) is int for entries in obj['matrices'] for v in entries)
    assert '"' not in json.dumps(obj['matrices'])


def test_json_accepts_full_matrices(generic_43):
    obj = generic_43.to_json()
    obj['matrices'] = [[[str(v) for v in row] for row in a] for a in generic_43.system.raw]
    assert PalatiniInstance.from_json(obj) == generic_43


def test_json_rejects_corrupted_skewness(generic_43):
    obj = generic_43.to_json()
    full = [[list(row) for row in a] for a in generic_43.system.raw]
    full[2][0][1] = (full[2][0][1] + 1) % 1009
    obj['matrices'] = full
    with pytest.raises(NotSkewSymmetric):
        PalatiniInstance.from_json(obj)


@pytest.mark.parametrize('mutate', [
    lambda obj: obj.pop('k'),
    lambda obj: obj['matrices'].pop(),
    lambda obj: obj['matrices'][0].pop(),
    lambda obj: obj['matrices'][1].__setitem__(0, 'x'),
])
def test_json_rejects_malformed(generic_43, mutate):
    obj = json.loads(generic_43.dumps())
    mutate(obj)
    with pytest.raises(InstanceFormatError):
        PalatiniInstance.from_json(obj)


def test_loads_rejects_bad_json():
    with pytest.raises(InstanceFormatError):
        PalatiniInstance.loads('{"m": 3,')


@pytest.mark.parametrize('m, k', [(3, 3), (3, 4), (4, 3)])
def test_pfaffian_squared_is_determinant(m, k):
    inst = instance_random(m, k, F1009, m * 10 + k)
    rng = np.random.default_rng(0)
    for _ in range(50):
        u = _random_vector(F1009, m, rng)
        mu = inst.pencil(u)
        assert inst.pf(u) ** 2 == mu.det()
        assert inst.pf(u) == mu.pfaffian()


# Membership


def test_single_invertible_form_has_empty_scroll():
    j = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    inst = PalatiniInstance(SkewSystem(F101, [Matrix(F101, j)]))
    rng = np.random.default_rng(3)
    for _ in range(20):
        v = _random_vector(F101, 4, rng)
        if any(not x.is_zero for x in v):
            assert membership_X(inst, v) == (False, 0)


def test_common_kernel_vector_is_member_with_full_corank(common_kernel_43):
    e0 = [1, 0, 0, 0, 0, 0]
    assert membership_X(common_kernel_43, e0) == (True, 4)


def test_incidence_points_are_members_of_corank_one(generic_43):
    for _, v in sample_incidence(generic_43, 20, seed=4):
        assert membership_X(generic_43, v) == (True, 1)


def test_membership_is_scale_invariant(generic_43):
    rng = np.random.default_rng(5)
    points = [v for _, v in sample_incidence(generic_43, 10, seed=5)]
    points += [_random_vector(F1009, 6, rng) for _ in range(10)]
    for v in points:
        lam = F1009.random_nonzero(rng)
        assert membership_X(generic_43, v) == membership_X(generic_43, [lam * x for x in v])


def test_membership_rejects_zero_vector(generic_43):
    with pytest.raises(ZeroVector):
        membership_X(generic_43, [0] * 6)


def test_phi_matrix_matches_raw_coefficients(generic_43):
    rng = np.random.default_rng(6)
    v = _random_vector(F1009, 6, rng)
    n_v = generic_43.phi_matrix(v)
    f_v = generic_43.F.evaluate(v)
    for i in range(6):
        for l in range(4):
            expected = sum(generic_43.system.entry(l, i, j) * int(v[j]) for j in range(6)) % 1009
            assert n_v[i, l] == expected
            assert f_v[l, i] == n_v[i, l]


def test_minors_vanish_on_incidence_points(generic_43):
    for _, v in sample_incidence(generic_43, 10, seed=7):
        assert all(x.is_zero for x in generic_43.minor_system.evaluate(v))


# Probes and genericity


def test_stratum_probe_generic_phi_has_no_hits(generic_43):
    hits = rank_stratum_probe(generic_43, 2, 300, seed=8)
    assert hits.samples == 300
    assert hits.hits == 0


def test_stratum_probe_pencil_on_y_always_hits(generic_43):
    hits = rank_stratum_probe(generic_43, 1, 50, seed=9, target=StratumTarget.PENCIL)
    assert hits.hits == hits.samples == 50


def test_stratum_probe_finds_planted_common_kernel(common_kernel_43):
    hits = rank_stratum_probe(common_kernel_43, 2, 50, seed=10, target=StratumTarget.PENCIL)
    assert hits.samples == 50 and hits.hits > 0


def test_stratum_probe_finds_proportional_degeneracy(proportional_43):
    hits = rank_stratum_probe(proportional_43, 2, 30, seed=11)
    assert hits.hits > 0


def test_genericity_check_passes_on_random_instance(generic_43):
    report = genericity_check(generic_43, trials=60, seed=12)
    assert report.pf_nonzero and report.f_phi_injective and report.phi_injective and report.range_ok
    assert report.d_m2_probe.trials == 60 and report.d_m2_probe.hits == 0
    assert report.y_smooth_probe.singular_hits == 0
    assert report.codim_probe.slice_dim == 2
    assert report.codim_probe.point_count == report.codim_probe.sampled == 60
    assert report.passed
    assert report.evidence['d_m2_probe'] == EvidenceKind.PROBED
    assert report.model_dump(mode='json')['evidence']['pf_nonzero'] == 'verified'


def test_genericity_check_flags_common_kernel(common_kernel_43):
    report = genericity_check(common_kernel_43, trials=20, seed=13)
    assert not report.f_phi_injective
    assert not report.pf_nonzero
    assert not report.passed


def test_genericity_check_flags_proportional_matrices(proportional_43):
    report = genericity_check(proportional_43, trials=20, seed=14)
    assert not report.phi_injective
    assert report.d_m2_probe.hits > 0


def test_genericity_check_flags_range():
    report = genericity_check(instance_random(5, 3, F1009, 15), trials=10, seed=15)
    assert not report.range_ok
    assert not report.passed
