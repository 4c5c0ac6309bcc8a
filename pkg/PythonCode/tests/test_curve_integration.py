import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings, strategies as st

from KahlerProductGeometry.Surfaces.Surface2D import plane, sphere, hyperbolic
from KahlerProductGeometry.Surfaces.Curve_Integration import integrate_prescribed_curvature, curve_curvatures, \
    curve_curvature, reversed_start, check_unit_speed, CURVE_COLUMNS
from KahlerProductGeometry.Verification_Suites import fresnel_endpoint, quad_endpoint
from KahlerProductGeometry.utils.Dtypes import dtypes_curve
from KahlerProductGeometry.utils.Errors import CurveSpeedError, DomainError, DomainExitError, GeometryError


def test_plane_circle_closes_after_half_turn():
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, 1.0, np.pi, 1e-3)
    np.testing.assert_allclose(c.points[-1], [0.0, 2.0], atol=1e-9)
    np.testing.assert_allclose(c.tangents[-1], [-1.0, 0.0], atol=1e-9)


def test_plane_geodesic_is_a_line():
    c = integrate_prescribed_curvature(plane(), (1.0, -1.0), 0.4, '0', 2.0, 0.01)
    np.testing.assert_allclose(c.points[-1], [1.0 + 2.0 * np.cos(0.4), -1.0 + 2.0 * np.sin(0.4)], atol=1e-12)


@pytest.mark.parametrize('surface, radius', [
    (sphere(), lambda s: np.tan(s / 2.0)),
    (hyperbolic(), lambda s: np.tanh(s / 2.0)),
])
def test_geodesics_through_the_origin(surface, radius):
    c = integrate_prescribed_curvature(surface, (0.0, 0.0), 0.0, '0', 1.0, 1e-3)
    np.testing.assert_allclose(c.points[:, 0], radius(c.s), atol=1e-9)
    np.testing.assert_allclose(c.points[:, 1], 0.0, atol=1e-12)


def test_step_is_adjusted_to_divide_the_length():
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, '0', 1.0, 0.3)
    assert len(c) == 5
    assert c.step == pytest.approx(0.25)
    assert c.length == pytest.approx(1.0)


def test_curves_are_unit_speed():
    c = integrate_prescribed_curvature(sphere(), (0.2, 0.1), 1.0, '0.5*s - 1', 3.0, 0.01)
    assert check_unit_speed(c) < 1e-12
    np.testing.assert_allclose(c.speeds(), 1.0, atol=1e-12)


def test_unit_speed_check_rejects_scaled_tangents():
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, '0', 1.0, 0.1)
    stretched = type(c)(c.surface, c.s, c.points, 2.0 * c.tangents, c.k, c.step)
    with pytest.raises(CurveSpeedError):
        check_unit_speed(stretched)


def test_cornu_spiral_endpoint_matches_fresnel_integrals():
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, 's', 5.0, 1e-3)
    fx, fy = fresnel_endpoint(1.0, 5.0)
    qx, qy = quad_endpoint(1.0, 5.0)
    assert fx == pytest.approx(qx, abs=1e-10)
    assert fy == pytest.approx(qy, abs=1e-10)
    np.testing.assert_allclose(c.points[-1], [fx, fy], atol=1e-6)


def test_recovered_curvature_of_a_circle():
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, '2', 1.0, 1e-3)
    k = curve_curvatures(c.surface, c)
    assert k.shape == (len(c) - 2,)
    np.testing.assert_allclose(k, 2.0, atol=1e-4)
    assert curve_curvature(c.surface, c, 1) == pytest.approx(2.0, abs=1e-4)
    with pytest.raises(IndexError):
        curve_curvature(c.surface, c, 0)
    with pytest.raises(IndexError):
        curve_curvature(c.surface, c, len(c) - 1)


def test_recovered_curvature_on_the_sphere():
    c = integrate_prescribed_curvature(sphere(), (0.1, 0.0), 0.3, '0.5', 2.0, 1e-3)
    np.testing.assert_allclose(curve_curvatures(c.surface, c), 0.5, atol=1e-4)


@settings(deadline=None, max_examples=20)
@given(k=st.floats(0.2, 3.0), theta=st.floats(0.0, 2.0 * np.pi))
def test_constant_curvature_stays_on_its_circle(k, theta):
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), theta, k, 1.0, 1e-3)
    centre = np.array([-np.sin(theta), np.cos(theta)]) / k
    np.testing.assert_allclose(np.linalg.norm(c.points - centre, axis=1), 1.0 / k, atol=1e-8)


def test_reversed_start_returns_along_the_curve():
    S = sphere()
    c = integrate_prescribed_curvature(S, (0.3, -0.2), 0.7, '0', 1.5, 1e-3)
    p, theta = reversed_start(c)
    back = integrate_prescribed_curvature(S, p, theta, '0', 1.5, 1e-3)
    np.testing.assert_allclose(back.points[-1], [0.3, -0.2], atol=1e-8)


def test_domain_exit_reports_arclength():
    with pytest.raises(DomainExitError) as info:
        integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, '0', 60.0, 0.1)
    assert 49.9 <= info.value.arclength <= 50.2


def test_start_outside_domain():
    with pytest.raises(DomainError):
        integrate_prescribed_curvature(hyperbolic(), (1.5, 0.0), 0.0, '0', 1.0, 0.1)


@pytest.mark.parametrize('k, L, h', [('x', 1.0, 0.1), ('0', 0.0, 0.1), ('0', 1.0, -0.1)])
def test_invalid_inputs(k, L, h):
    with pytest.raises(GeometryError):
        integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, k, L, h)


def test_to_frame_and_csv(tmp_path):
    c = integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, '0.5*s', 1.0, 0.25)
    frame = c.to_frame()
    assert list(frame.columns) == CURVE_COLUMNS
    np.testing.assert_allclose(frame['k'], 0.5 * c.s)
    path = tmp_path / 'curve.csv'
    c.to_csv(str(path))
    assert path.read_text().splitlines()[0] == ','.join(CURVE_COLUMNS)
    back = pd.read_csv(str(path), dtype=dtypes_curve)
    assert dict(back.dtypes.astype(str)) == dtypes_curve
    np.testing.assert_array_equal(back['s'].values, c.s)
