from src.pyPalatini.Palatini.Chow.degree import chern_degree, palatini_degree
from evals.apps.EvalApp import EvalApp, load_description


def run(full: bool) -> tuple[bool, dict]:
    pairs = [(m, k) for k in range(2, 11) for m in range(2, k + 2)]
    mismatches = [(m, k) for m, k in pairs if palatini_degree(m, k) != chern_degree(m, k)]
    anchors = {
        '(3,3)': palatini_degree(3, 3),
        '(4,3)': palatini_degree(4, 3),
        '(1,5)': palatini_degree(1, 5),
    }
    passed = not mismatches and anchors == {'(3,3)': 6, '(4,3)': 7, '(1,5)': 0}
    return passed, {'pairs': len(pairs), 'mismatches': mismatches, 'anchors': anchors}


degree_oracle = EvalApp('1 Degree cross-oracle', load_description(__file__), run)
