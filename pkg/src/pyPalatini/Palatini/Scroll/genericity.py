"""Rank-stratum probes and the genericity check of a Palatini instance.

Exact checks cover the algebraic hypotheses (a nonzero pfaffian, injectivity of f_phi and of phi, and the range
m <= k + 1); the open conditions (emptiness of D_{m-2}, smoothness of Y and the codimension of X) are probed at
sampled points and only ever reported as evidence.
"""
import logging
from typing import NamedTuple

import numpy as np

from .GenericityReport import CodimProbe, GenericityReport, SmoothnessProbe, StratumProbe
from .PalatiniInstance import PalatiniInstance
from .incidence import sample_incidence, sample_Y
from ..Fields.Scalar import Scalar
from ..Linalg.Matrix import Matrix
from ..Palatini import DEFAULT_PROBE_TRIALS, EvidenceKind, StratumTarget
from ..Polynomials.MultiPoly import FormSystem


logger = logging.getLogger(__name__)


StratumHits = NamedTuple('StratumHits', [('hits', int), ('samples', int)])
"""Outcome of a rank-stratum probe: how many of the sampled points lie in the stratum.
"""


def _uniform_points(inst: PalatiniInstance, nvars: int, trials: int, seed: int) -> list[list[Scalar]]:
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < trials:
        p = [inst.ctx.random(rng) for _ in range(nvars)]
        if any(not x.is_zero for x in p):
            points.append(p)
    return points


def rank_stratum_probe(inst: PalatiniInstance, r: int, trials: int, seed: int = 0,
                       target: StratumTarget = StratumTarget.PHI) -> StratumHits:
    """Count sampled points with corank at least r.

    For :attr:`StratumTarget.PHI` the points are v in P(V) and the corank is that of N(v); for
    :attr:`StratumTarget.PENCIL` the points are u in P(U) and the corank is that of M(u). When pf is nonzero the
    points are drawn through the incidence correspondence (u on Y, v in the kernel of M(u)), since every stratum of
    interest lies there; otherwise they are uniform in the projective space.

    :param PalatiniInstance inst: The instance.
    :param int r: The corank threshold.
    :param int trials: The number of points wanted; fewer are sampled when Y has fewer points.
    :param int seed: Seed of the sampling.
    :param StratumTarget target: Which map's strata to probe.
    """
    if target == StratumTarget.PHI:
        if inst.pf.is_zero:
            points = _uniform_points(inst, inst.n, trials, seed)
        else:
            points = [v for _, v in sample_incidence(inst, trials, seed)]
        hits = sum(1 for v in points if inst.membership(v).corank >= r)
    else:
        if inst.pf.is_zero:
            points = _uniform_points(inst, inst.m, trials, seed)
        else:
            points = sample_Y(inst, 1, trials, seed, strict=False)
        hits = sum(1 for u in points if inst.pencil(u).nullity() >= r)
    logger.debug('Rank probe %s r=%d: %d hits in %d samples', target.value, r, hits, len(points))
    return StratumHits(hits, len(points))


def minor_jacobian(inst: PalatiniInstance) -> FormSystem:
    """The partial derivatives of the maximal minors of F, ordered minor by minor and variable by variable within
    each minor.
    """
    forms = [minor.derivative(j) for minor in inst.minors for j in range(inst.n)]
    return FormSystem(forms, inst.n, inst.m - 1)


def jacobian_rank(inst: PalatiniInstance, jac: FormSystem, v: list[Scalar]) -> int:
    values = jac.evaluate(v)
    rows = [[x.raw for x in values[i:i + inst.n]] for i in range(0, len(values), inst.n)]
    return Matrix.from_raw(values[0].ctx, rows, inst.n).rank()


def genericity_check(inst: PalatiniInstance, trials: int = DEFAULT_PROBE_TRIALS, seed: int = 0) -> GenericityReport:
    """Check the genericity hypotheses on an instance.

    :param PalatiniInstance inst: The instance.
    :param int trials: The number of sampled points of Y (and of X) behind each probe.
    :param int seed: Seed of the sampling.
    :return: The report.
    :rtype: GenericityReport
    """
    system = inst.system
    pf_nonzero = not inst.pf.is_zero
    f_phi_injective = system.f_phi_rank() == inst.n
    phi_injective = system.is_injective
    range_ok = inst.m <= inst.k + 1
    codim = inst.n - inst.m
    if pf_nonzero:
        pairs = sample_incidence(inst, trials, seed)
        grad = inst.pf_gradient
        jac = minor_jacobian(inst)
        d_m2_hits = sum(1 for _, v in pairs if inst.membership(v).corank >= 2)
        singular = sum(1 for ipt, _ in pairs if all(x.is_zero for x in grad.evaluate(ipt.u)))
        codim_ok = sum(1 for _, v in pairs if jacobian_rank(inst, jac, v) == codim)
        d_m2 = StratumProbe(trials=len(pairs), hits=d_m2_hits)
        y_smooth = SmoothnessProbe(sampled=len(pairs), singular_hits=singular)
        codim_probe = CodimProbe(slice_dim=codim, point_count=codim_ok, sampled=len(pairs))
    else:
        hits = rank_stratum_probe(inst, 2, trials, seed)
        d_m2 = StratumProbe(trials=hits.samples, hits=hits.hits)
        y_smooth = SmoothnessProbe(sampled=0, singular_hits=0)
        codim_probe = CodimProbe(slice_dim=codim, point_count=0, sampled=0)
    report = GenericityReport(
        m=inst.m,
        k=inst.k,
        field=str(inst.ctx),
        seed=seed,
        pf_nonzero=pf_nonzero,
        f_phi_injective=f_phi_injective,
        phi_injective=phi_injective,
        range_ok=range_ok,
        d_m2_probe=d_m2,
        y_smooth_probe=y_smooth,
        codim_probe=codim_probe,
        evidence={
            'pf_nonzero': EvidenceKind.VERIFIED,
            'f_phi_injective': EvidenceKind.VERIFIED,
            'phi_injective': EvidenceKind.VERIFIED,
            'range_ok': EvidenceKind.VERIFIED,
            'd_m2_probe': EvidenceKind.PROBED,
            'y_smooth_probe': EvidenceKind.PROBED,
            'codim_probe': EvidenceKind.PROBED,
        },
        instance_hash=inst.digest,
    )
    if not report.passed:
        logger.warning('Genericity check failed for %r: %s', inst, report.model_dump(mode='json'))
    return report
