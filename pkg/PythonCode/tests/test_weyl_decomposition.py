import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from KahlerProductGeometry.Kahler.KahlerProduct import build_adapted_frame, random_point
from KahlerProductGeometry.Kahler.Weyl_Decomposition import two_form_bases, frame_curvature, weyl_tensor, \
    weyl_blocks, weyl_norms, conformal_flatness_residual
from KahlerProductGeometry.utils.Errors import EmptySampleError

from conftest import PRODUCTS, product

P0 = np.array([0.2, -0.1, 0.3, 0.25])


@pytest.mark.parametrize('first, second, eps', [
    ('plane', 'plane', 1), ('plane', 'plane', -1), ('sphere', 'hyperbolic', 1),
    ('sphere', 'sphere', -1), ('hyperbolic', 'hyperbolic', -1),
])
def test_conformally_flat_products(first, second, eps, rng):
    K = product(first, second, eps)
    points = np.array([random_point(K, rng, 0.6) for _ in range(10)])
    assert conformal_flatness_residual(K, points) < 1e-8


@pytest.mark.parametrize('first, second, eps', [
    ('sphere', 'sphere', 1), ('plane', 'sphere', 1), ('sphere', 'hyperbolic', -1), ('hyperbolic', 'hyperbolic', 1),
])
def test_products_that_are_not_conformally_flat(first, second, eps):
    assert conformal_flatness_residual(product(first, second, eps), P0[None, :]) > 0.1


@pytest.mark.parametrize('p', [P0, np.array([0.0, 0.0, 0.0, 0.0]), np.array([-0.7, 0.4, 1.5, -2.0])])
def test_self_dual_block_of_two_unit_spheres(p):
    Wplus, _ = weyl_blocks(product('sphere', 'sphere', 1), p)
    np.testing.assert_allclose(np.diag(Wplus), [4.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0], atol=1e-10)


@pytest.mark.parametrize('first, second, eps', PRODUCTS)
def test_weyl_tensor_is_trace_free(first, second, eps):
    K = product(first, second, eps)
    G, Rm, Ric, R = frame_curvature(K, build_adapted_frame(K, P0))
    W = weyl_tensor(G, Rm, Ric, R)
    np.testing.assert_allclose(np.einsum('ik,ijkl->jl', np.linalg.inv(G), W), 0.0, atol=1e-10)


@pytest.mark.parametrize('first, second, eps', PRODUCTS)
def test_frame_curvature_contractions(first, second, eps):
    K = product(first, second, eps)
    G, Rm, Ric, R = frame_curvature(K, build_adapted_frame(K, P0))
    k1, k2 = K.gauss(P0)
    assert R == pytest.approx(2.0 * (k1 + eps * k2), abs=1e-10)
    np.testing.assert_allclose(Rm, -np.transpose(Rm, (1, 0, 2, 3)), atol=1e-12)
    np.testing.assert_allclose(Ric, Ric.T, atol=1e-12)


@pytest.mark.parametrize('eps', [1, -1])
def test_two_form_bases_are_antisymmetric(eps):
    plus, minus = two_form_bases(eps)
    assert len(plus) == len(minus) == 3
    for form in plus + minus:
        np.testing.assert_array_equal(form, -form.T)
    # e12 appears with + in both bases, e34 with opposite signs
    assert plus[0][0, 1] == minus[0][0, 1] == 1.0
    assert plus[0][2, 3] == -minus[0][2, 3]


def test_weyl_norms_per_point():
    K = product('sphere', 'sphere', 1)
    norms = weyl_norms(K, np.array([P0, 0.5 * P0]))
    assert norms.shape == (2,)
    np.testing.assert_allclose(norms, norms[0])


def test_empty_sample():
    with pytest.raises(EmptySampleError):
        weyl_norms(product('plane', 'plane', 1), np.empty((0, 4)))


@settings(deadline=None, max_examples=20)
@given(k=st.floats(0.2, 3.0))
def test_flatness_requires_opposite_curvatures(k):
    from KahlerProductGeometry.Kahler.KahlerProduct import KahlerProduct
    from KahlerProductGeometry.Surfaces.Surface2D import sphere, hyperbolic
    flat = KahlerProduct(sphere(k), hyperbolic(-k), 1)
    assert conformal_flatness_residual(flat, P0[None, :]) < 1e-8
    curved = KahlerProduct(sphere(k), sphere(k), 1)
    assert conformal_flatness_residual(curved, P0[None, :]) > 1e-3
