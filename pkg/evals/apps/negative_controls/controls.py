import numpy as np

from src.pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from src.pyPalatini.Palatini.Linalg.Matrix import Matrix
from src.pyPalatini.Palatini.PalatiniError import DegeneratePfaffian, FiberNotUnique, PalatiniError
from src.pyPalatini.Palatini.Scroll.PalatiniInstance import PalatiniInstance
from src.pyPalatini.Palatini.Scroll.SkewSystem import SkewSystem
from src.pyPalatini.Palatini.Scroll.genericity import genericity_check
from src.pyPalatini.Palatini.Scroll.incidence import fiber_of_x, sample_incidence, sample_Y
from evals.apps.EvalApp import EvalApp, load_description


F1009 = FieldCtx.prime(1009)


def _random_mats(m: int, n: int, seed: int) -> list[list[list]]:
    rng = np.random.default_rng(seed)
    return [Matrix.random_skew(F1009, n, rng).raw_rows() for _ in range(m)]


def common_kernel(m: int, k: int, seed: int) -> PalatiniInstance:
    mats = _random_mats(m, 2 * k, seed)
    for raw in mats:
        for i in range(2 * k):
            raw[0][i] = raw[i][0] = 0
    return PalatiniInstance(SkewSystem(F1009, [Matrix(F1009, raw) for raw in mats]))


def proportional(m: int, k: int, seed: int) -> PalatiniInstance:
    mats = [Matrix(F1009, raw) for raw in _random_mats(m, 2 * k, seed)]
    mats[1] = mats[0].scale(3)
    return PalatiniInstance(SkewSystem(F1009, mats))


def isotropic_block(m: int, k: int, seed: int) -> PalatiniInstance:
    """Every M(u) vanishes on the span of the first k + 1 basis vectors, so pf is zero with no common kernel."""
    mats = _random_mats(m, 2 * k, seed)
    for raw in mats:
        for i in range(k + 1):
            for j in range(k + 1):
                raw[i][j] = 0
    return PalatiniInstance(SkewSystem(F1009, [Matrix(F1009, raw) for raw in mats]))


def _sampling_error(inst: PalatiniInstance) -> str:
    try:
        sample_Y(inst, 1, 5, seed=7)
    except PalatiniError as ex:
        return type(ex).__name__
    return ''


def _round_trip_errors(inst: PalatiniInstance) -> list[str]:
    errors = []
    for _, v in sample_incidence(inst, 10, seed=8):
        try:
            fiber_of_x(inst, v)
            errors.append('')
        except PalatiniError as ex:
            errors.append(type(ex).__name__)
    return errors


def run(full: bool) -> tuple[bool, dict]:
    details = {}
    passed = True

    for name, inst in (('common kernel', common_kernel(4, 3, 21)), ('pf zero', isotropic_block(4, 3, 22))):
        report = genericity_check(inst, trials=20, seed=9)
        error = _sampling_error(inst)
        details[name] = {'flagged': not report.passed, 'pf_nonzero': report.pf_nonzero, 'sampling_error': error}
        passed = passed and not report.passed and error == DegeneratePfaffian.__name__

    inst = proportional(4, 3, 23)
    report = genericity_check(inst, trials=20, seed=9)
    errors = _round_trip_errors(inst)
    details['proportional'] = {
        'flagged': not report.passed,
        'phi_injective': report.phi_injective,
        'round_trip_errors': sorted(set(errors)),
    }
    passed = passed and not report.passed and errors and all(e == FiberNotUnique.__name__ for e in errors)
    return bool(passed), details


negative_controls = EvalApp('7 Negative controls', load_description(__file__), run)
