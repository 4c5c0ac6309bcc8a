import numpy as np
import pytest

from KahlerProductGeometry.Lagrangian.Rank_Two_Algebra import LagrangianFrameCoefficients, tangent_frame, \
    frame_coefficients, rank_two_constraint_residual
from KahlerProductGeometry.utils.Errors import RankError


def centre(imm):
    return (imm.shape[0] // 2, imm.shape[1] // 2)


@pytest.mark.parametrize('name', ['plane2', 's2xs2_eps_plus', 's2xh2', 'h2xh2', 'plane_x_h2', 's2xs2k2_eps_minus'])
def test_frame_identities_hold_on_twist_graphs(config, name):
    imm = config(name).immersion('twist')
    for node in imm.interior_nodes()[::97]:
        residuals = frame_coefficients(imm, node).identity_residuals()
        assert len(residuals) == 5
        assert max(residuals.values()) < 1e-9


@pytest.mark.parametrize('name', ['s2xh2', 'h2xh2'])
def test_tangent_frame_is_orthonormal(config, name):
    cfg = config(name)
    imm = cfg.immersion('twist')
    K, node = cfg.kahler(), centre(imm)
    e1, e2 = tangent_frame(imm, node)
    P = imm.Phi[node]
    assert float(K.metric_array(P, e1, e1)) == pytest.approx(1.0)
    assert float(K.metric_array(P, e2, e2)) == pytest.approx(float(K.eps))
    assert float(K.metric_array(P, e1, e2)) == pytest.approx(0.0, abs=1e-12)


def test_identity_residuals_of_hand_made_coefficients():
    c = LagrangianFrameCoefficients(0.6, 0.0, 0.8, 0.0, 0.0, 0.8, 0.0, -0.6, 1)
    assert c.a == pytest.approx(0.36)
    assert c.b_bar == pytest.approx(0.36)
    assert max(c.identity_residuals().values()) == pytest.approx(0.0, abs=1e-15)


def test_rank_one_immersions_have_no_frame_coefficients(config):
    imm = config('plane2').immersion('circles')
    with pytest.raises(RankError):
        frame_coefficients(imm, (50, 50))
    with pytest.raises(RankError):
        rank_two_constraint_residual(imm, (50, 50))


@pytest.mark.parametrize('name, expected', [
    ('plane2', 0.0), ('plane2_eps_minus', 0.0), ('s2xs2_eps_plus', 0.0), ('plane_x_s2', 1.0), ('plane_x_h2', 1.0),
    ('s2xh2', 2.0), ('s2xs2_eps_minus', 2.0), ('h2xh2', 2.0), ('s2xs2k2_eps_minus', 3.0),
])
def test_constraint_value_on_each_product(config, name, expected):
    imm = config(name).immersion('twist')
    assert rank_two_constraint_residual(imm, centre(imm)) == pytest.approx(expected, abs=1e-9)
