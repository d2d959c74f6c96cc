"""Degree formulas and closed-form invariants of Palatini scrolls.

The degree of the scroll X in P^{2k-1} is computed two independent ways: by the alternating binomial sum, and as the
top-relevant Chern class of the twisted cotangent bundle, read off the truncated Chow ring of P^{2k-1}.
"""
from typing import NamedTuple, Optional

from scipy.special import comb

from .ChowClass import ChowClass
from ..PalatiniError import RangeError


def binomial(n: int, r: int) -> int:
    return int(comb(n, r, exact=True)) if 0 <= r <= n else 0


def _check_range(m: int, k: int):
    if k < 1 or not 1 <= m <= 2 * k:
        raise RangeError(f'Degree formulas need 1 <= m <= 2k, got m={m}, k={k}.')


def palatini_degree(m: int, k: int) -> int:
    """deg X = sum_{i=0}^{2k-m} (-1)^i C(2k-1-i, m-1).

    :raises RangeError: Unless 1 <= m <= 2k.
    """
    _check_range(m, k)
    return sum((-1) ** i * binomial(2 * k - 1 - i, m - 1) for i in range(2 * k - m + 1))


def cotangent_twist_chern(k: int) -> ChowClass:
    """The total Chern class (1 + h)^{2k} (1 + 2h)^{-1} of the twisted cotangent bundle of P^{2k-1}, from the twisted
    Euler sequence.
    """
    n = 2 * k - 1
    h = ChowClass.hyperplane(n)
    return (1 + h) ** (2 * k) * (1 + 2 * h).inverse()


def chern_degree(m: int, k: int) -> int:
    """The coefficient of h^{2k-m} in (1 + h)^{2k} (1 + 2h)^{-1}, truncated mod h^{2k}.

    :raises RangeError: Unless 1 <= m <= 2k.
    """
    _check_range(m, k)
    return cotangent_twist_chern(k)[2 * k - m]


DegreeRow = NamedTuple('DegreeRow', [('m', int), ('k', int), ('formula', int), ('chern', int), ('agree', bool)])
"""One row of the degree cross-check table.
"""


def degree_table(m_range: range, k_range: range) -> list[DegreeRow]:
    """Both degree computations over a grid of (m, k), keeping only pairs with 1 <= m <= 2k, ordered by k then m.
    """
    rows = []
    for k in k_range:
        for m in m_range:
            if k >= 1 and 1 <= m <= 2 * k:
                formula, chern = palatini_degree(m, k), chern_degree(m, k)
                rows.append(DegreeRow(m, k, formula, chern, formula == chern))
    return rows


def expected_tangent_dim(m: int, k: int) -> Optional[int]:
    """The closed form of h^0 of the normal bundle, where it is known: m(k(2k-1) - m) for m >= 4 and k >= m - 1, and
    3k(5k-7)/2 for m = 3, k >= 4. None elsewhere.
    """
    if m >= 4 and k >= m - 1:
        return m * (k * (2 * k - 1) - m)
    if m == 3 and k >= 4:
        return 3 * k * (5 * k - 7) // 2
    return None


def reference_h1(m: int, k: int) -> int:
    """h^1 of the normal bundle as a closed-form lookup: 2(k-2)(k-3)(k-4)/3 for m = 4, k >= 5, and 0 for m >= 5 with
    k >= m - 1, for m = 4 with 3 <= k <= 4, and for m = 3 with k >= 4.

    :raises RangeError: Outside those cases.
    """
    if m == 4 and k >= 5:
        return 2 * (k - 2) * (k - 3) * (k - 4) // 3
    if (m >= 5 and k >= m - 1) or (m == 4 and 3 <= k <= 4) or (m == 3 and k >= 4):
        return 0
    raise RangeError(f'No closed form for h^1 of the normal bundle at m={m}, k={k}.')


ScrollInvariants = NamedTuple('ScrollInvariants', [
    ('m', int),
    ('k', int),
    ('dim', int),
    ('codim', int),
    ('degree', int),
    ('pfaffian_degree', int),
    ('grassmannian_dim', int),
    ('expected_h0_normal', Optional[int]),
    ('expected_h1_normal', Optional[int]),
    ('base_curve_genus', Optional[int]),
    ('bundle_degree', Optional[int]),
    ('main_theorem_range', bool),
])
"""Closed-form invariants of the scroll X in P^{2k-1} built from an m-dimensional system of skew forms. The base
curve genus and the degree of the rank-2 bundle on it are only set for m = 3, where the pfaffian hypersurface is a
plane curve.
"""


def scroll_invariants(m: int, k: int) -> ScrollInvariants:
    """
    :raises RangeError: Unless 1 <= m <= 2k - 1.
    """
    if k < 1 or not 1 <= m <= 2 * k - 1:
        raise RangeError(f'A scroll needs 1 <= m <= 2k - 1, got m={m}, k={k}.')
    try:
        h1 = reference_h1(m, k)
    except RangeError:
        h1 = None
    return ScrollInvariants(
        m=m,
        k=k,
        dim=m - 1,
        codim=2 * k - m,
        degree=palatini_degree(m, k),
        pfaffian_degree=k,
        grassmannian_dim=m * (k * (2 * k - 1) - m),
        expected_h0_normal=expected_tangent_dim(m, k),
        expected_h1_normal=h1,
        base_curve_genus=binomial(k - 1, 2) if m == 3 else None,
        bundle_degree=k * (k - 1) if m == 3 else None,
        main_theorem_range=m >= 4 and k >= m - 1,
    )
