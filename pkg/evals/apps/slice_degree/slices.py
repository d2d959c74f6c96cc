from src.pyPalatini.Palatini.Chow.degree import palatini_degree
from src.pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from src.pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random
from src.pyPalatini.Palatini.Scroll.genericity import genericity_check
from src.pyPalatini.Palatini.Scroll.slice import slice_degree_evidence
from evals.apps.EvalApp import EvalApp, load_description


SLICES = 10
REQUIRED = 8
MAX_EXT = 6


def first_generic_surface(ctx: FieldCtx, seeds: range = range(1, 40)):
    for seed in seeds:
        inst = instance_random(3, 3, ctx, seed)
        if genericity_check(inst, trials=20, seed=seed).passed:
            return inst
    return None


def run(full: bool) -> tuple[bool, dict]:
    inst = first_generic_surface(FieldCtx.prime(5))
    if inst is None:
        return False, {'error': 'no generic (3,3) instance over F_5'}
    degree = palatini_degree(3, 3)
    evidence = slice_degree_evidence(inst, MAX_EXT, SLICES, seed=0)
    bounded = all(c <= degree for record in evidence for c in record.counts.values())
    reached = sum(record.reached for record in evidence)
    details = {
        'instance_seed': inst.seed,
        'degree': degree,
        'reached': reached,
        'redraws': sum(record.redraws for record in evidence),
        'counts': [[record.counts[e] for e in range(1, MAX_EXT + 1)] for record in evidence],
    }
    return bounded and reached >= REQUIRED, details


slice_degree = EvalApp('6 Slice point counts', load_description(__file__), run)
