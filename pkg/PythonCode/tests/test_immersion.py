import numpy as np
import pytest

from KahlerProductGeometry.Lagrangian.Immersion import Grid, first_derivative, second_derivative, \
    build_graph, build_immersion, max_over_interior, IMMERSION_COLUMNS
from KahlerProductGeometry.Lagrangian.Graph_Fixtures import twist_map
from KahlerProductGeometry.utils.Errors import DomainError, GeometryError


GRID = {'s': [-0.5, 0.5], 't': [-0.5, 0.5], 'step': 0.02}


def cubic(x):
    return x ** 3 - 2.0 * x ** 2 + x - 1.0


@pytest.mark.parametrize('axis', [0, 1])
def test_stencils_are_exact_on_cubics(axis):
    x = np.linspace(0.0, 1.0, 11)
    F = np.stack([cubic(x)] * 3, axis=1 - axis)
    d1 = first_derivative(F, 0.1, axis)
    d2 = second_derivative(F, 0.1, axis)
    expected1 = np.stack([3.0 * x ** 2 - 4.0 * x + 1.0] * 3, axis=1 - axis)
    expected2 = np.stack([6.0 * x - 4.0] * 3, axis=1 - axis)
    np.testing.assert_allclose(d1, expected1, atol=1e-10)
    np.testing.assert_allclose(d2, expected2, atol=1e-9)


def test_first_derivative_is_fourth_order():
    errors = []
    for n in (21, 41):
        x = np.linspace(0.0, 1.0, n)
        errors.append(np.max(np.abs(first_derivative(np.sin(3.0 * x), x[1] - x[0], 0)[2:-2] - 3.0 * np.cos(3.0 * x[2:-2]))))
    assert np.log2(errors[0] / errors[1]) > 3.5


def test_stencils_need_five_nodes():
    with pytest.raises(GeometryError):
        first_derivative(np.zeros(4), 0.1, 0)


def test_grid_axes():
    s, t = Grid.from_dict(GRID).axes()
    assert len(s) == len(t) == 51
    assert s[0] == -0.5 and s[-1] == 0.5


def test_rank_one_immersion_layout(make_product, make_rank_one):
    K = make_product('sphere', 'hyperbolic', 1)
    imm = make_rank_one(K)
    assert imm.kind == 'rank-one'
    assert imm.shape == (101, 101)
    assert imm.margin == 2
    assert imm.h_s == pytest.approx(0.01)
    np.testing.assert_array_equal(imm.Phi_st, 0.0)
    # phi depends on s only, psi on t only
    np.testing.assert_array_equal(imm.Phi[:, 0, :2], imm.Phi[:, -1, :2])
    np.testing.assert_array_equal(imm.Phi[0, :, 2:], imm.Phi[-1, :, 2:])
    np.testing.assert_array_equal(imm.Phi_s[..., 2:], 0.0)
    np.testing.assert_array_equal(imm.Phi_t[..., :2], 0.0)


def test_graph_with_exact_derivatives_has_no_margin(make_product):
    imm = build_graph(make_product('plane', 'plane', 1), ('x', '-y'), GRID)
    assert imm.kind == 'graph'
    assert imm.margin == 0
    np.testing.assert_allclose(imm.Phi_s[..., :], np.broadcast_to([1.0, 0.0, 1.0, 0.0], imm.Phi_s.shape))
    np.testing.assert_allclose(imm.Phi_t[..., :], np.broadcast_to([0.0, 1.0, 0.0, -1.0], imm.Phi_t.shape))


def test_stencil_and_exact_derivatives_agree(make_product):
    K = make_product('sphere', 'sphere', 1)
    exprs = twist_map(K, 0.3)

    def f(x, y):
        tau = 0.3 * (x ** 2 + y ** 2)
        return x * np.cos(tau) + y * np.sin(tau), x * np.sin(tau) - y * np.cos(tau)
    exact, stencil = build_graph(K, exprs, GRID), build_graph(K, f, GRID)
    assert stencil.margin == 2
    si, ti = stencil.interior()
    np.testing.assert_allclose(stencil.Phi, exact.Phi, atol=1e-12)
    for key in ('Phi_s', 'Phi_t', 'Phi_ss', 'Phi_st', 'Phi_tt'):
        np.testing.assert_allclose(getattr(stencil, key)[si, ti], getattr(exact, key)[si, ti], atol=1e-5)


def test_general_immersion(make_product):
    K = make_product('plane', 'plane', -1)
    imm = build_immersion(K, ('x + y', 'x - y'), ('2*x', 'y'), {'s': [0.0, 0.2], 't': [0.0, 0.2], 'step': 0.05})
    assert imm.kind == 'general'
    np.testing.assert_allclose(imm.Phi_s[0, 0], [1.0, 1.0, 2.0, 0.0])
    np.testing.assert_allclose(imm.Phi_t[0, 0], [1.0, -1.0, 0.0, 1.0])


def test_map_components_may_only_use_x_and_y(make_product):
    with pytest.raises(GeometryError):
        build_graph(make_product('plane', 'plane', 1), ('x', 's'), GRID)
    with pytest.raises(GeometryError):
        build_graph(make_product('plane', 'plane', 1), ('x',), GRID)


def test_points_outside_the_chart(make_product):
    with pytest.raises(DomainError):
        build_graph(make_product('hyperbolic', 'hyperbolic', -1), ('x', 'y'),
                    {'s': [0.5, 1.2], 't': [0.5, 1.2], 'step': 0.05})


def test_interior_and_node_checks(make_product):
    K = make_product('plane', 'plane', 1)

    def f(x, y):
        return x, -y
    imm = build_graph(K, f, {'s': [0.0, 0.04], 't': [0.0, 0.04], 'step': 0.01})
    assert imm.interior() == (slice(2, 3), slice(2, 3))
    assert imm.interior_nodes() == [(2, 2)]
    with pytest.raises(GeometryError):
        imm.interior(extra=1)
    imm.check_node((2, 2))
    with pytest.raises(IndexError):
        imm.check_node((1, 2))


def test_max_over_interior_ignores_the_margin(make_product):
    K = make_product('plane', 'plane', 1)
    imm = build_graph(K, lambda x, y: (x, -y), GRID)
    values = np.zeros(imm.shape)
    values[0, 0] = 100.0
    values[10, 20] = -3.0
    value, node = max_over_interior(imm, values)
    assert value == 3.0
    assert node == (10, 20)


def test_to_frame_and_csv(make_product, tmp_path):
    imm = build_graph(make_product('plane', 'plane', 1), ('x', '-y'), {'s': [0.0, 0.2], 't': [0.0, 0.1], 'step': 0.05})
    frame = imm.to_frame()
    assert list(frame.columns) == IMMERSION_COLUMNS
    assert len(frame) == 5 * 3
    np.testing.assert_allclose(frame['y2'], -frame['t'])
    assert set(frame.dtypes.astype(str)) == {'float64'}
    imm.to_csv(str(tmp_path / 'imm.csv'))
    assert (tmp_path / 'imm.csv').exists()
