import numpy as np
import pytest

from KahlerProductGeometry.Kahler.KahlerProduct import J
from KahlerProductGeometry.Lagrangian.Immersion import build_graph
from KahlerProductGeometry.Lagrangian.Graph_Fixtures import conjugation_map, stretch_map
from KahlerProductGeometry.Lagrangian.Fundamental_Forms import TriTensor, omega_field, lagrangian_residual, \
    check_lagrangian, induced_metric, second_fundamental, mean_curvature, mean_curvature_norms, \
    mean_curvature_coefficients, rank_one_mean_curvature_residual, hamiltonian_residual, factor_ranks, \
    projected_rank, projected_ranks, residual_record
from KahlerProductGeometry.utils.Errors import DegenerateMetricError, ImmersionKindError, NonLagrangianError

GRID = {'s': [-0.5, 0.5], 't': [-0.5, 0.5], 'step': 0.05}
CENTRE = (10, 10)


@pytest.fixture
def plane2(config):
    return config('plane2')


def test_conjugation_graph_is_totally_geodesic(plane2):
    imm = plane2.immersion('conjugation')
    assert lagrangian_residual(imm) == pytest.approx(0.0, abs=1e-14)
    g, degenerate = induced_metric(imm, (25, 25))
    np.testing.assert_allclose(g, 2.0 * np.eye(2), atol=1e-14)
    assert not degenerate
    assert second_fundamental(imm, (25, 25)).max_abs() == pytest.approx(0.0, abs=1e-14)
    np.testing.assert_allclose(mean_curvature(imm, (25, 25)).comps, 0.0, atol=1e-14)
    assert factor_ranks(imm, (25, 25)) == (2, 2)


def test_stretch_graph_is_not_lagrangian(make_product):
    imm = build_graph(make_product('plane', 'plane', 1), stretch_map(), GRID)
    np.testing.assert_allclose(np.abs(omega_field(imm)), 3.0, atol=1e-12)
    assert lagrangian_residual(imm) == pytest.approx(3.0)
    with pytest.raises(NonLagrangianError):
        check_lagrangian(imm, CENTRE)
    with pytest.raises(NonLagrangianError):
        second_fundamental(imm, CENTRE)
    with pytest.raises(NonLagrangianError):
        mean_curvature(imm, CENTRE)


def test_circles_have_the_rank_one_mean_curvature(plane2):
    imm = plane2.immersion('circles')
    node = (50, 50)
    # k_phi = 2, k_psi = 1 and the induced metric is flat
    assert mean_curvature_norms(imm)[node] == pytest.approx(np.sqrt(5.0) / 2.0, abs=1e-6)
    assert rank_one_mean_curvature_residual(imm) < 1e-5
    H = mean_curvature(imm, node).comps
    expected = 0.5 * (2.0 * J(imm.Phi_s[node]) + J(imm.Phi_t[node]))
    np.testing.assert_allclose(H, expected, atol=1e-6)
    assert hamiltonian_residual(imm) == pytest.approx(0.0, abs=1e-12)
    assert factor_ranks(imm, node) == (1, 1)
    assert projected_rank(imm, node) == 1


@pytest.mark.parametrize('name, eps', [('plane2', 1), ('plane2_eps_minus', -1), ('h2xh2', -1), ('s2xh2', 1)])
def test_geodesic_products_have_metric_diag_one_eps(config, name, eps):
    imm = config(name).immersion('geodesics')
    g, degenerate = induced_metric(imm, (50, 50))
    np.testing.assert_allclose(g, np.diag([1.0, eps]), atol=1e-7)
    assert not degenerate
    assert lagrangian_residual(imm) < 1e-10
    assert second_fundamental(imm, (50, 50)).max_abs() < 1e-6


def test_identity_graph_in_the_neutral_plane_is_degenerate(make_product):
    K = make_product('plane', 'plane', -1)
    imm = build_graph(K, conjugation_map(K), GRID)
    assert lagrangian_residual(imm) == pytest.approx(0.0, abs=1e-14)
    g, degenerate = induced_metric(imm, CENTRE)
    np.testing.assert_allclose(g, 0.0, atol=1e-14)
    assert degenerate
    with pytest.raises(DegenerateMetricError):
        mean_curvature(imm, CENTRE)
    alpha, beta = mean_curvature_coefficients(imm)
    assert np.all(np.isnan(alpha)) and np.all(np.isnan(beta))


def test_rank_one_formulas_need_rank_one_immersions(plane2):
    imm = plane2.immersion('conjugation')
    with pytest.raises(ImmersionKindError):
        rank_one_mean_curvature_residual(imm)
    with pytest.raises(ImmersionKindError):
        hamiltonian_residual(imm)


def test_cubic_form_components_are_symmetric():
    h = TriTensor(1.0, 2.0, 3.0, -4.0)
    assert h.component(0, 0, 0) == 1.0
    assert h.component(0, 0, 1) == h.component(0, 1, 0) == h.component(1, 0, 0) == 2.0
    assert h.component(1, 1, 0) == h.component(0, 1, 1) == 3.0
    assert h.component(1, 1, 1) == -4.0
    assert h.max_abs() == 4.0


def test_projected_ranks_of_a_twist_graph(plane2):
    imm = plane2.immersion('twist')
    ranks = projected_ranks(imm)
    assert ranks.shape == (51, 51)
    assert np.all(ranks == 2)


def test_residual_record(plane2):
    imm = plane2.immersion('conjugation')
    values = np.zeros(imm.shape)
    values[3, 4] = -2e-7
    record = residual_record('omega', values, imm, 1e-6)
    assert record == {'name': 'omega', 'max_residual': 2e-7, 'node_of_max': [3, 4], 'tolerance': 1e-6, 'pass': True}
    assert not residual_record('omega', 10.0 * values, imm, 1e-6)['pass']
