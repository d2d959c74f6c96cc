from src.pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from src.pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random
from src.pyPalatini.Palatini.Scroll.incidence import fiber, sample_Y, scroll_line
from evals.apps.EvalApp import EvalApp, load_description


CASES = ((3, 4), (4, 3), (4, 4), (5, 4))


def run(full: bool) -> tuple[bool, dict]:
    ctx = FieldCtx.prime(1009)
    details = {}
    for m, k in CASES:
        inst = instance_random(m, k, ctx, 100 + 10 * m + k)
        records = [scroll_line(inst, fiber(inst, u)) for u in sample_Y(inst, 1, 20, seed=4)]
        details[f'({m},{k})'] = {
            'lines': len(records),
            'points_per_line': k + 1,
            'minors': len(inst.minors),
            'all_pass': sum(r.all_pass for r in records),
        }
    passed = all(d['lines'] == d['all_pass'] == 20 for d in details.values())
    return passed, details


scroll_lines = EvalApp('4 Scroll-line minor vanishing', load_description(__file__), run)
