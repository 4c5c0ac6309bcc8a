import os
import sys
import numpy as np
import pytest

PYTHON_CODE = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PYTHON_CODE not in sys.path:
    sys.path.insert(0, PYTHON_CODE)

from KahlerProductGeometry.Surfaces.Surface2D import plane, sphere, hyperbolic
from KahlerProductGeometry.Surfaces.Curve_Integration import integrate_prescribed_curvature
from KahlerProductGeometry.Kahler.KahlerProduct import KahlerProduct
from KahlerProductGeometry.Lagrangian.Immersion import build_rank_one
from KahlerProductGeometry.utils.Config import load_config

MODELS = {'plane': plane, 'sphere': sphere, 'hyperbolic': hyperbolic}

# (sigma1, sigma2, eps) covering flat, curved and mixed factors with both signs
PRODUCTS = [
    ('plane', 'plane', 1), ('plane', 'plane', -1),
    ('sphere', 'sphere', 1), ('sphere', 'sphere', -1),
    ('sphere', 'hyperbolic', 1), ('sphere', 'hyperbolic', -1),
    ('hyperbolic', 'hyperbolic', -1), ('plane', 'sphere', 1),
]


def product(first, second, eps):
    return KahlerProduct(MODELS[first](), MODELS[second](), eps)


@pytest.fixture
def make_product():
    return product


@pytest.fixture
def make_rank_one():
    '''Rank-one immersion of two curves started at the chart origins.'''
    def _make(K, k1='0', k2='0', length=1.0, step=0.01, angles=(0.0, 1.0)):
        c1 = integrate_prescribed_curvature(K.sigma1, (0.0, 0.0), angles[0], k1, length, step)
        c2 = integrate_prescribed_curvature(K.sigma2, (0.0, 0.0), angles[1], k2, length, step)
        return build_rank_one(K, c1, c2)
    return _make


@pytest.fixture
def config():
    return load_config


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
