'''
Maslov_Form.py

The Maslov form of a Lagrangian immersion, a(X) = G(J 2H, X), satisfies

    da(d_s, d_t) = rho(Phi_s, Phi_t),    rho(X, Y) = Ric(JX, Y).

a is sampled at every node and da(d_s, d_t) = d_s a(d_t) - d_t a(d_s) is taken
with the immersion stencils, so the defect is reported 2 nodes further inside
than the immersion margin.
'''
###################################################################################
import numpy as np

from ..Kahler.KahlerProduct import J
from .Fundamental_Forms import check_lagrangian, mean_curvature_field, LAGRANGIAN_TOL
from .Immersion import first_derivative, max_over_interior

MASLOV_EXTRA_MARGIN = 2


def maslov_one_form(imm):
    '''(a(d_s), a(d_t)) at every node.'''
    K, P = imm.product, imm.Phi
    JH2 = J(mean_curvature_field(imm))
    return K.metric_array(P, JH2, imm.Phi_s), K.metric_array(P, JH2, imm.Phi_t)


def maslov_defects(imm):
    '''da(d_s, d_t) - rho(Phi_s, Phi_t) at every node; the outer band is meaningless.'''
    a_s, a_t = maslov_one_form(imm)
    da = first_derivative(a_t, imm.h_s, 0) - first_derivative(a_s, imm.h_t, 1)
    rho = imm.product.ricci_form_array(imm.Phi, imm.Phi_s, imm.Phi_t)
    return da - rho


def maslov_defect(imm, node, tol=LAGRANGIAN_TOL):
    '''Maslov identity defect at one node, at least 2 nodes inside the immersion margin.'''
    imm.check_node(node, MASLOV_EXTRA_MARGIN)
    check_lagrangian(imm, node, tol)
    return float(maslov_defects(imm)[node])


def max_maslov_defect(imm):
    return max_over_interior(imm, np.abs(maslov_defects(imm)), MASLOV_EXTRA_MARGIN)
