import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from KahlerProductGeometry.Surfaces.Surface2D import Surface2D, RectDomain, DiskDomain, TangentVec2, \
    christoffel, gauss_curvature, levi_civita, plane, sphere, hyperbolic, scaled, disk_area, rotate
from KahlerProductGeometry.Kahler.Structure_Checks import fd_gauss_curvature, christoffel_table
from KahlerProductGeometry.utils.Errors import DomainError, GeometryError

POINTS = [(0.0, 0.0), (0.3, -0.2), (-0.5, 0.4), (0.1, 0.6)]


@pytest.mark.parametrize('surface, expected', [
    (plane(), 0.0), (sphere(), 1.0), (hyperbolic(), -1.0), (sphere(2.0), 2.0), (hyperbolic(-0.5), -0.5),
    (scaled(sphere(), 2.0), 0.25),
])
@pytest.mark.parametrize('p', POINTS)
def test_model_gauss_curvature(surface, expected, p):
    assert gauss_curvature(surface, p) == pytest.approx(expected, abs=1e-10)


def test_user_metric_gauss_curvature():
    # log(lambda) = x^2 + y^2 has Laplacian 4
    S = Surface2D('bowl', 'exp(x^2 + y^2)', RectDomain(-1.0, 1.0, -1.0, 1.0))
    assert gauss_curvature(S, (0.3, 0.2)) == pytest.approx(-2.0 * np.exp(-0.13), rel=1e-12)
    flat = Surface2D('ramp', 'exp(x)', RectDomain(-1.0, 1.0, -1.0, 1.0))
    assert gauss_curvature(flat, (0.5, -0.5)) == pytest.approx(0.0, abs=1e-14)


def test_conformal_factor_may_not_depend_on_arclength():
    with pytest.raises(GeometryError):
        Surface2D('bad', 'x + s', RectDomain(-1.0, 1.0, -1.0, 1.0))


def test_gauss_curvature_outside_domain():
    with pytest.raises(DomainError):
        gauss_curvature(hyperbolic(), (1.2, 0.0))
    with pytest.raises(DomainError):
        christoffel(hyperbolic(), (0.0, -1.0))


def test_domains_are_open():
    rect, disk = RectDomain(0.0, 1.0, 0.0, 1.0), DiskDomain(0.0, 0.0, 1.0)
    assert not rect.contains(1.0, 0.5)
    assert rect.contains(0.5, 0.5)
    assert not disk.contains(1.0, 0.0)
    assert disk.contains(0.6, 0.6)
    assert rect.describe() == {'type': 'rect', 'bounds': [0.0, 1.0, 0.0, 1.0]}


def test_sphere_christoffel_symbols():
    x, y = 0.3, -0.4
    a, b, c, d = christoffel(sphere(), (x, y))
    # a = lambda_x / (2 lambda) = -2x/(1 + r^2)
    assert a == pytest.approx(-2.0 * x / 1.25)
    assert b == pytest.approx(-2.0 * y / 1.25)
    assert c == pytest.approx(-b)
    assert d == pytest.approx(a)
    table = christoffel_table(sphere(), x, y)
    assert table[0, 0, 0] == pytest.approx(a)
    assert table[1, 1, 1] == pytest.approx(b)
    assert table[0, 1, 1] == pytest.approx(-a)


def test_plane_christoffel_symbols_vanish():
    assert christoffel(plane(), (3.0, -2.0)) == (0.0, 0.0, -0.0, 0.0)


@pytest.mark.parametrize('surface', [sphere(), hyperbolic(), sphere(2.0),
                                     Surface2D('bowl', 'exp(x^2 + y^2)', RectDomain(-1.0, 1.0, -1.0, 1.0))])
@pytest.mark.parametrize('p', POINTS)
def test_curvature_from_differentiated_christoffel_symbols(surface, p):
    assert fd_gauss_curvature(surface, p) == pytest.approx(surface.gauss(*p), abs=1e-6)


def test_inner_product_and_area_form():
    S = sphere()
    p = (1.0, 0.0)
    lam = S.lam(*p)
    assert lam == pytest.approx(1.0)
    assert S.inner(p, (2.0, 0.0), (3.0, 1.0)) == pytest.approx(6.0 * lam)
    assert S.area(p, (1.0, 0.0), (0.0, 1.0)) == pytest.approx(lam)
    # omega(v, jv) = g(v, v)
    v = np.array([0.4, -1.2])
    assert S.area(p, v, rotate(v)) == pytest.approx(S.inner(p, v, v))


def test_tangent_vector_rotation_is_an_isometry():
    S = hyperbolic()
    v = TangentVec2((0.2, 0.1), (0.5, -0.3))
    w = v.rotated()
    assert w.components == pytest.approx((0.3, 0.5))
    assert w.norm(S) == pytest.approx(v.norm(S))
    assert S.inner(v.base, v.components, w.components) == pytest.approx(0.0)


def test_levi_civita_of_a_parallel_field_on_the_plane():
    np.testing.assert_allclose(levi_civita(plane(), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)), [0.0, 0.0])


@pytest.mark.parametrize('surface, r, expected', [
    (plane(), 2.0, 4.0 * np.pi),
    (sphere(), 1.0, 2.0 * np.pi),
    (sphere(2.0), 1.0, np.pi),
    (hyperbolic(), 0.5, 4.0 * np.pi / 3.0),
])
def test_disk_area(surface, r, expected):
    assert disk_area(surface, r) == pytest.approx(expected)


def test_model_constructors_check_the_sign():
    with pytest.raises(GeometryError):
        sphere(-1.0)
    with pytest.raises(GeometryError):
        hyperbolic(1.0)


@settings(deadline=None, max_examples=25)
@given(x=st.floats(-0.9, 0.9), y=st.floats(-0.9, 0.9), c=st.floats(0.5, 3.0))
def test_scaling_divides_curvature(x, y, c):
    S = sphere()
    assert scaled(S, c).gauss(x, y) == pytest.approx(S.gauss(x, y) / c ** 2, rel=1e-9)
