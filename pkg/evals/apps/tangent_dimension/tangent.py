import warnings

from src.pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from src.pyPalatini.Palatini.Palatini import TangentStatus
from src.pyPalatini.Palatini.PalatiniError import GenericityNotProbed
from src.pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random
from src.pyPalatini.Palatini.Tangent.hilbert import tangent_dimension
from evals.apps.EvalApp import EvalApp, load_description


QUICK_CASES = ((4, 3),)
FULL_CASES = ((4, 3), (3, 4), (4, 4), (5, 4))


def run(full: bool) -> tuple[bool, dict]:
    details = {}
    passed = True
    for m, k in FULL_CASES if full else QUICK_CASES:
        for p in (1009, 2003):
            for seed in (1, 2):
                with warnings.catch_warnings():
                    warnings.simplefilter('ignore', GenericityNotProbed)
                    report = tangent_dimension(instance_random(m, k, FieldCtx.prime(p), seed))
                    if report.status == TangentStatus.NO_STABILIZATION:
                        report = tangent_dimension(instance_random(m, k, FieldCtx.prime(p), seed), m + 4)
                details[f'({m},{k}) p={p} seed={seed}'] = {
                    'computed': report.computed_dim,
                    'expected': report.expected_dim,
                    'status': report.status.value,
                    'stabilization': [step.dim for step in report.stabilization],
                }
                passed = passed and report.status == TangentStatus.AGREE
    return passed, details


tangent_app = EvalApp('5 Hilbert tangent dimensions', load_description(__file__), run)
