import numpy as np
import pytest

from KahlerProductGeometry.Lagrangian.Immersion import build_graph
from KahlerProductGeometry.Lagrangian.Graph_Fixtures import stretch_map
from KahlerProductGeometry.Lagrangian.Maslov_Form import maslov_one_form, maslov_defect, maslov_defects, \
    max_maslov_defect, MASLOV_EXTRA_MARGIN
from KahlerProductGeometry.utils.Errors import NonLagrangianError


@pytest.mark.parametrize('name, fixture', [
    ('plane2', 'twist'), ('plane2', 'circles'), ('plane2', 'geodesics'), ('s2xs2_eps_plus', 'twist'),
    ('s2xh2', 'twist'), ('s2xh2', 'geodesics'), ('h2xh2', 'twist'), ('h2xh2', 'curved'),
])
def test_maslov_identity(config, name, fixture):
    imm = config(name).immersion(fixture)
    value, node = max_maslov_defect(imm)
    assert value < 1e-4
    si, ti = imm.interior(MASLOV_EXTRA_MARGIN)
    assert si.start <= node[0] < si.stop and ti.start <= node[1] < ti.stop


def test_maslov_form_of_circles(config):
    # a = G(J 2H, .) with 2H = 2 J Phi_s + J Phi_t gives a = (-2, -1)
    imm = config('plane2').immersion('circles')
    a_s, a_t = maslov_one_form(imm)
    np.testing.assert_allclose(np.abs(a_s[5:-5, 5:-5]), 2.0, atol=1e-6)
    np.testing.assert_allclose(np.abs(a_t[5:-5, 5:-5]), 1.0, atol=1e-6)
    assert maslov_defects(imm).shape == imm.shape


def test_single_node_defect(config):
    imm = config('s2xs2_eps_plus').immersion('twist')
    assert abs(maslov_defect(imm, (25, 25))) < 1e-4
    with pytest.raises(IndexError):
        maslov_defect(imm, (1, 25))


def test_defect_needs_a_lagrangian_node(make_product):
    imm = build_graph(make_product('plane', 'plane', 1), stretch_map(), {'s': [-0.5, 0.5], 't': [-0.5, 0.5], 'step': 0.05})
    with pytest.raises(NonLagrangianError):
        maslov_defect(imm, (10, 10))


def test_identity_pairs_2H_with_the_J_first_ricci_form(config):
    # a(X) = G(J 2H, X) against rho(X, Y) = Ric(JX, Y); with G(JH, .) and Ric(X, JY)
    # the two sides scale by 1/2 and -1 and the identity breaks
    imm = config('h2xh2').immersion('twist')
    si, ti = imm.interior(MASLOV_EXTRA_MARGIN)
    rho = imm.product.ricci_form_array(imm.Phi, imm.Phi_s, imm.Phi_t)[si, ti]
    defects = maslov_defects(imm)[si, ti]
    da = defects + rho
    assert np.max(np.abs(rho)) > 0.1
    assert np.max(np.abs(defects)) < 1e-4
    assert np.max(np.abs(0.5 * da + rho)) > 1000.0 * np.max(np.abs(defects))
