import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from KahlerProductGeometry.Surfaces.Surface2D import plane, sphere, hyperbolic
from KahlerProductGeometry.Lagrangian.Immersion import build_graph
from KahlerProductGeometry.Lagrangian.Graph_Fixtures import twist_map, inversion_map, conjugation_map, \
    stretch_map, constant_map, area_scale
from KahlerProductGeometry.Lagrangian.Fundamental_Forms import lagrangian_residual
from KahlerProductGeometry.utils.Config import builtin_configs

from conftest import product


@pytest.mark.parametrize('name', builtin_configs())
def test_twist_graphs_of_the_builtin_configs_are_lagrangian(config, name):
    imm = config(name).immersion('twist')
    assert imm.margin == 0
    assert lagrangian_residual(imm) < 1e-8


@settings(deadline=None, max_examples=15)
@given(twist=st.floats(-2.0, 2.0), eps=st.sampled_from([1, -1]))
def test_any_twist_keeps_the_graph_lagrangian(twist, eps):
    K = product('sphere', 'hyperbolic', eps)
    imm = build_graph(K, twist_map(K, twist), {'s': [0.2, 0.6], 't': [0.2, 0.6], 'step': 0.05})
    assert lagrangian_residual(imm) < 1e-8


def test_inversion_is_lagrangian_on_two_spheres(config):
    imm = config('s2xs2_eps_plus').immersion('inversion')
    assert lagrangian_residual(imm) < 1e-8


def test_inversion_with_the_neutral_sign():
    K = product('sphere', 'sphere', -1)
    imm = build_graph(K, inversion_map(K), {'s': [0.4, 1.2], 't': [0.4, 1.2], 'step': 0.05})
    assert lagrangian_residual(imm) < 1e-8


def test_conjugation_and_stretch_maps():
    assert conjugation_map(product('plane', 'plane', 1)) == ('x', '-y')
    assert conjugation_map(product('plane', 'plane', -1)) == ('x', 'y')
    assert stretch_map() == ('2*x', 'y')


def test_area_scale_between_equal_factors_is_one():
    assert area_scale(sphere(), sphere()) == '1'
    assert area_scale(plane(), plane()) == '1'
    assert area_scale(sphere(), hyperbolic()).startswith('sqrt(')


def test_constant_map_uses_plain_floats():
    assert constant_map(np.array([0.1, -0.2])) == ('0.1', '-0.2')
