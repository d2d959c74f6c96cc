import numpy as np

from src.pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from src.pyPalatini.Palatini.Linalg.Matrix import Matrix
from src.pyPalatini.Palatini.Scroll.PalatiniInstance import instance_random
from src.pyPalatini.Palatini.Scroll.verification import check_pfaffian_identity
from evals.apps.EvalApp import EvalApp, load_description


def run(full: bool) -> tuple[bool, dict]:
    rng = np.random.default_rng(2)
    numeric = {}
    for ctx, sizes in ((FieldCtx.prime(1009), (4, 6, 8)), (FieldCtx.rational(), (4, 6))):
        failures = 0
        count = 0
        for n in sizes:
            for _ in range(200 // (len(sizes) * 2) + 1):
                a = Matrix.random_skew(ctx, n, rng)
                failures += a.pfaffian() ** 2 != a.det()
                count += 1
        numeric[str(ctx)] = {'matrices': count, 'failures': failures}
    symbolic = {}
    for m, k in ((3, 3), (3, 4), (4, 3), (4, 4)):
        check = check_pfaffian_identity(instance_random(m, k, FieldCtx.prime(1009), 10 * m + k), 50, seed=2)
        symbolic[f'({m},{k})'] = check.model_dump()
    passed = all(v['failures'] == 0 for v in numeric.values()) and all(
        v['square_failures'] == 0 and v['symbolic_failures'] == 0 for v in symbolic.values()
    )
    return passed, {'numeric': numeric, 'symbolic': symbolic}


pfaffian_identity = EvalApp('2 Pfaffian identity', load_description(__file__), run)
