import numpy as np
import pytest
from hypothesis import given, strategies as st

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Linalg.Matrix import Matrix
from pyPalatini.Palatini.Linalg.ModularEchelon import ModularEchelon
from pyPalatini.Palatini.Linalg.modular import matmul_mod, rref_mod
from pyPalatini.Palatini.PalatiniError import NotSkewSymmetric, ResourceBudgetExceeded, ShapeError


F1009 = FieldCtx.prime(1009)


def test_pfaffian_of_standard_two_by_two():
    a = Matrix(F1009, [[0, 1], [-1, 0]])
    assert a.pfaffian() == 1


def test_pfaffian_four_by_four_formula():
    a12, a13, a14, a23, a24, a34 = 2, 3, 5, 7, 11, 13
    a = Matrix(F1009, [
        [0, a12, a13, a14],
        [-a12, 0, a23, a24],
        [-a13, -a23, 0, a34],
        [-a14, -a24, -a34, 0],
    ])
    assert a.pfaffian() == a12 * a34 - a13 * a24 + a14 * a23


def test_pfaffian_of_zero_and_odd_sizes():
    assert Matrix.zeros(F1009, 4, 4).pfaffian() == 0
    assert Matrix.zeros(F1009, 3, 3).pfaffian() == 0
    assert Matrix.zeros(F1009, 0, 0).pfaffian() == 1


def test_pfaffian_rejects_bad_input():
    with pytest.raises(NotSkewSymmetric):
        Matrix(F1009, [[0, 1], [1, 0]]).pfaffian()
    with pytest.raises(ShapeError):
        Matrix(F1009, [[0, 1, 2], [-1, 0, 3]]).pfaffian()
    # skew-symmetric but a nonzero diagonal is only possible in characteristic 2
    f2 = FieldCtx.prime(2)
    with pytest.raises(NotSkewSymmetric):
        Matrix(f2, [[1, 1], [1, 0]]).pfaffian()


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=2 ** 32))
def test_pfaffian_squared_is_determinant(half, seed):
    a = Matrix.random_skew(F1009, 2 * half, np.random.default_rng(seed))
    assert a.pfaffian() ** 2 == a.det()


@pytest.mark.parametrize('ctx', [FieldCtx.extension_of(7, 3, seed=2), FieldCtx.rational(), FieldCtx.prime(2)])
def test_pfaffian_squared_is_determinant_over_other_fields(ctx):
    rng = np.random.default_rng(17)
    for n in (2, 4, 6):
        a = Matrix.random_skew(ctx, n, rng)
        assert a.pfaffian() ** 2 == a.det()


def test_pfaffian_changes_sign_under_transposition_of_indices():
    rng = np.random.default_rng(3)
    a = Matrix.random_skew(F1009, 6, rng)
    perm = [1, 0, 2, 3, 4, 5]
    b = Matrix(F1009, [[a[perm[i], perm[j]] for j in range(6)] for i in range(6)])
    assert b.pfaffian() == -a.pfaffian()


def test_rank_equals_rank_of_transpose():
    rng = np.random.default_rng(21)
    for _ in range(100):
        rows, cols, inner = (int(x) for x in rng.integers(1, 9, size=3))
        # rank at most inner
        a = Matrix.random(F1009, rows, inner, rng) @ Matrix.random(F1009, inner, cols, rng)
        assert a.rank() == a.T.rank()
        assert a.rank() <= min(rows, cols, inner)


@pytest.mark.parametrize('n', [4, 6, 8])
def test_pfaffian_under_congruence(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        a = Matrix.random_skew(F1009, n, rng)
        p = Matrix.random(F1009, n, n, rng)
        while p.det() == 0:
            p = Matrix.random(F1009, n, n, rng)
        assert (p.T @ a @ p).pfaffian() == p.det() * a.pfaffian()


def test_rank_and_kernel_of_dependent_rows():
    rng = np.random.default_rng(5)
    base = Matrix.random(F1009, 3, 7, rng)
    stacked = Matrix(F1009, base.raw_rows() + [[(2 * a + 3 * b) % 1009 for a, b in zip(*base.raw_rows()[:2])]])
    assert stacked.rank() == 3
    kernel = stacked.kernel_basis()
    assert kernel.shape == (7, 4)
    assert (stacked @ kernel) == Matrix.zeros(F1009, 4, 4)


def test_kernel_basis_is_rref_normalized():
    a = Matrix(F1009, [[1, 2, 0, 3], [0, 0, 1, 4]])
    kernel = a.kernel_basis()
    # free columns 1 and 3
    assert kernel.column(0) == [F1009(-2), F1009(1), F1009(0), F1009(0)]
    assert kernel.column(1) == [F1009(-3), F1009(0), F1009(-4), F1009(1)]


def test_kernel_of_full_rank_is_empty():
    assert Matrix.identity(F1009, 3).kernel_basis().shape == (3, 0)


def test_generic_and_prime_paths_agree():
    rng = np.random.default_rng(8)
    a = Matrix.random(F1009, 4, 6, rng)
    q = FieldCtx.rational()
    # entries reduced to [0, p) are also valid rationals; rank over Q can only be larger
    assert Matrix(q, a.raw_rows()).rank() >= a.rank()
    r, piv = a.rref()
    assert piv == rref_mod(a.array, 1009)[1]


def test_matmul_mod_is_exact_for_large_primes():
    p = 2 ** 31 - 1
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, size=(5, 40))
    b = rng.integers(0, p, size=(40, 3))
    expected = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(40)) % p for j in range(3)] for i in range(5)]
    assert matmul_mod(a, b, p).tolist() == expected
    q = 1009
    assert matmul_mod(a % q, b % q, q).tolist() == [
        [sum(int(a[i, t] % q) * int(b[t, j] % q) for t in range(40)) % q for j in range(3)] for i in range(5)
    ]


def test_streaming_echelon_matches_dense_rref():
    rng = np.random.default_rng(21)
    rows = rng.integers(0, 1009, size=(12, 20))
    rows[5] = (rows[0] + 7 * rows[1]) % 1009
    rows[9] = 0
    ech = ModularEchelon(1009, 20)
    for start in range(0, 12, 5):
        ech.add_rows(rows[start:start + 5])
    dense, pivots = rref_mod(rows, 1009)
    assert ech.rank == len(pivots) == 10
    assert sorted(ech.pivots.tolist()) == pivots
    kernel = ech.kernel_basis()
    assert not (matmul_mod(rows, kernel.T, 1009)).any()


def test_streaming_echelon_pivots_do_not_depend_on_row_order():
    rng = np.random.default_rng(4)
    rows = rng.integers(0, 1009, size=(6, 15))
    rows[:, :3] = 0
    a, b = ModularEchelon(1009, 15), ModularEchelon(1009, 15)
    a.add_rows(rows)
    b.add_rows(rows[::-1])
    assert sorted(a.pivots.tolist()) == sorted(b.pivots.tolist())


def test_tracked_rows_and_normal_forms():
    ech = ModularEchelon(7, 4)
    block = np.array([[1, 1, 0, 0], [2, 2, 0, 0], [0, 0, 1, 3], [1, 1, 1, 3]])
    assert ech.add_rows_tracked(block) == [0, 2]
    nf = ech.express_columns(np.array([0, 1, 2, 3]))
    # e_0 = -e_1 and e_2 = -3 e_3 modulo the rows
    assert nf.tolist() == [[6, 0], [1, 0], [0, 4], [0, 1]]
    assert ech.contains(np.array([[3, 3, 2, 6]])).tolist() == [True]


def test_memory_budget_is_enforced():
    with pytest.raises(ResourceBudgetExceeded):
        ModularEchelon(1009, 10 ** 6, budget_bytes=2 ** 30)
