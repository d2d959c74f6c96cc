import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pyPalatini.Palatini.Fields.FieldCtx import FieldCtx
from pyPalatini.Palatini.Linalg.Matrix import Matrix
from pyPalatini.Palatini.Scroll.PalatiniInstance import PalatiniInstance, instance_random
from pyPalatini.Palatini.Scroll.SkewSystem import SkewSystem

settings.register_profile('ci', suppress_health_check=(HealthCheck.too_slow,), max_examples=25, deadline=None)
settings.register_profile('dev', max_examples=50, deadline=None)
settings.load_profile('ci' if 'CI' in os.environ else 'dev')


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run the large tangent-space cases')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: large exact computations, run with --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


F1009 = FieldCtx.prime(1009)


def _skew(ctx, n, entries):
    """A skew matrix from a dict {(i, j): value} of entries below the diagonal.
    """
    data = [[0] * n for _ in range(n)]
    for (i, j), v in entries.items():
        data[i][j] = v
        data[j][i] = -v
    return Matrix(ctx, data)


def block_instance(ctx):
    """m = k = 3 with M(u) = diag(u1 J, u2 J, u3 J), so that pf = u1 u2 u3.
    """
    mats = [_skew(ctx, 6, {(2 * l + 1, 2 * l): 1}) for l in range(3)]
    return PalatiniInstance(SkewSystem(ctx, mats))


def common_kernel_instance(ctx, m, k, seed):
    """Random skew matrices that all vanish on the first basis vector.
    """
    rng = np.random.default_rng(seed)
    n = 2 * k
    mats = []
    for _ in range(m):
        raw = Matrix.random_skew(ctx, n, rng).raw_rows()
        for i in range(n):
            raw[0][i] = raw[i][0] = 0
        mats.append(Matrix(ctx, raw))
    return PalatiniInstance(SkewSystem(ctx, mats))


def proportional_instance(ctx, m, k, seed):
    """Random skew matrices with the second a multiple of the first.
    """
    rng = np.random.default_rng(seed)
    mats = [Matrix.random_skew(ctx, 2 * k, rng) for _ in range(m)]
    mats[1] = mats[0].scale(3)
    return PalatiniInstance(SkewSystem(ctx, mats))


@pytest.fixture(scope='session')
def generic_43():
    return instance_random(4, 3, F1009, 1)


@pytest.fixture(scope='session')
def generic_34():
    return instance_random(3, 4, F1009, 2)


@pytest.fixture(scope='session')
def block_101():
    return block_instance(FieldCtx.prime(101))


@pytest.fixture(scope='session')
def block_5():
    return block_instance(FieldCtx.prime(5))


@pytest.fixture(scope='session')
def common_kernel_43():
    return common_kernel_instance(F1009, 4, 3, 11)


@pytest.fixture(scope='session')
def proportional_43():
    return proportional_instance(F1009, 4, 3, 12)
