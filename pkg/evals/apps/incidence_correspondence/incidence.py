from src.pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from src.pyPalatini.Palatini.PalatiniError import PalatiniError
from src.pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random
from src.pyPalatini.Palatini.Scroll.incidence import fiber_of_x, sample_incidence
from evals.apps.EvalApp import EvalApp, load_description


CASES = ((3, 4), (4, 3), (4, 4), (5, 4))
POINTS = 100


def _bilinear_vanishes(inst, u, v) -> bool:
    # sum_{j,l} a_ij^l v_j u_l, on raw residues
    p = inst.ctx.characteristic
    uu, vv = [int(x) for x in u], [int(x) for x in v]
    for i in range(inst.n):
        total = sum(inst.system.entry(l, i, j) * vv[j] * uu[l] for j in range(inst.n) for l in range(inst.m))
        if total % p:
            return False
    return True


def run(full: bool) -> tuple[bool, dict]:
    ctx = FieldCtx.prime(1009)
    details = {}
    for m, k in CASES:
        inst = instance_random(m, k, ctx, 100 + 10 * m + k)
        pairs = sample_incidence(inst, POINTS, seed=3)
        corank_two = identity = round_trips = 0
        for ipt, v in pairs:
            corank_two += ipt.corank == 2
            identity += _bilinear_vanishes(inst, ipt.u, v)
            try:
                round_trips += fiber_of_x(inst, v) == ipt.u
            except PalatiniError:
                pass
        details[f'({m},{k})'] = {
            'points': len(pairs), 'corank_two': corank_two, 'identity': identity, 'round_trips': round_trips,
        }
    passed = all(
        d['points'] == d['corank_two'] == d['identity'] == d['round_trips'] == POINTS for d in details.values()
    )
    return passed, details


incidence_correspondence = EvalApp('3 Incidence correspondence', load_description(__file__), run)
