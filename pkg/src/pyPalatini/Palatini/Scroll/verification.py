import logging

import numpy as np

from .PalatiniInstance import PalatiniInstance
from .VerificationReport import IncidenceCheck, PfaffianCheck, SampleRecord, VerificationReport
from .genericity import genericity_check
from .incidence import fiber, fiber_of_x, sample_incidence, sample_Y, sampling_field, scroll_line
from ..Palatini import DEFAULT_CHECK_POINTS, DEFAULT_PROBE_TRIALS
from ..PalatiniError import PalatiniError


logger = logging.getLogger(__name__)


LINE_CHECK_LIMIT: int = 20
"""The number of fiber lines whose points are checked against the minors by a verification run.
"""


def check_pfaffian_identity(inst: PalatiniInstance, points: int = DEFAULT_CHECK_POINTS, seed: int = 0) -> PfaffianCheck:
    """Compare pf(u)^2 with det M(u), and pf(u) with the numeric pfaffian of M(u), at random points u.
    """
    rng = np.random.default_rng([seed, 2])
    square = symbolic = 0
    for _ in range(points):
        u = [inst.ctx.random(rng) for _ in range(inst.m)]
        mu = inst.pencil(u)
        value = inst.pf(u)
        square += value * value != mu.det()
        symbolic += value != mu.pfaffian()
    if square or symbolic:
        logger.error('Pfaffian identity failed on %r: %d square and %d symbolic mismatches', inst, square, symbolic)
    return PfaffianCheck(points=points, square_failures=square, symbolic_failures=symbolic)


def check_incidence(inst: PalatiniInstance, trials: int, ext_degree: int = 1, seed: int = 0) -> IncidenceCheck:
    """Walk sampled pairs (u, v) of the incidence correspondence: the fiber over u should have corank 2, v should map
    back to u, the minors should vanish at v, and on the first fibers at every checked point of the line.
    """
    if inst.pf.is_zero:
        return IncidenceCheck(ext_degree=ext_degree, sampled=0, corank_two=0, round_trips=0, minor_failures=0,
                              lines_checked=0, line_failures=0)
    pairs = sample_incidence(inst, trials, seed, ext_degree)
    corank_two = round_trips = minor_failures = lines = line_failures = 0
    for ipt, v in pairs:
        if ipt.corank == 2:
            corank_two += 1
        try:
            round_trips += fiber_of_x(inst, v) == ipt.u
        except PalatiniError as ex:
            logger.info('Fiber round trip failed at %r: %s', ipt, ex)
        if any(not x.is_zero for x in inst.minor_system.evaluate(v)):
            minor_failures += 1
        if ipt.corank == 2 and lines < LINE_CHECK_LIMIT:
            lines += 1
            line_failures += not scroll_line(inst, ipt).all_pass
    return IncidenceCheck(ext_degree=ext_degree, sampled=len(pairs), corank_two=corank_two, round_trips=round_trips,
                          minor_failures=minor_failures, lines_checked=lines, line_failures=line_failures)


def verify_instance(inst: PalatiniInstance, trials: int = DEFAULT_PROBE_TRIALS, ext_degree: int = 1,
                    seed: int = 0) -> VerificationReport:
    """Run the pfaffian identity, the genericity check and the incidence checks on one instance.

    :param PalatiniInstance inst: The instance.
    :param int trials: Sampled points behind each probe.
    :param int ext_degree: Degree of the extension the incidence checks sample over.
    :param int seed: Seed of all sampling.
    """
    sampling_field(inst, ext_degree)
    report = VerificationReport(
        m=inst.m,
        k=inst.k,
        field=str(inst.ctx),
        seed=seed,
        pfaffian=check_pfaffian_identity(inst, DEFAULT_CHECK_POINTS, seed),
        genericity=genericity_check(inst, trials, seed),
        incidence=check_incidence(inst, trials, ext_degree, seed),
        instance_hash=inst.digest,
    )
    logger.info('Verification of %r finished with %s', inst, report.exit_code.name)
    return report


def sample_records(inst: PalatiniInstance, ext_degree: int = 1, count: int = 10, seed: int = 0) -> list[SampleRecord]:
    """Sampled points u of Y with their fibers. ``verified`` records that the kernel columns are annihilated by M(u)
    and lie on X.
    """
    records = []
    for u in sample_Y(inst, ext_degree, count, seed, strict=False):
        ipt = fiber(inst, u)
        mu = inst.pencil(u)
        verified = all(
            all(x.is_zero for x in mu.apply(col)) and inst.membership(col).member for col in ipt.kernel.columns()
        )
        records.append(SampleRecord(
            u=[x.to_json() for x in u],
            corank=ipt.corank,
            kernel=[[x.to_json() for x in col] for col in ipt.kernel.columns()],
            verified=verified,
        ))
    return records
