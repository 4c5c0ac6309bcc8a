'''
Second_Variation.py

Second variation of the area of a Lagrangian immersion along the Hamiltonian
field X = J grad u of a compactly supported potential u:

    d2V(u) = int (Lap u)^2 - Ric(grad u, grad u) - 2 G(h(grad u, grad u), 2H)
                 + G(2H, J grad u)^2  dV

With 2H = alpha J Phi_s + beta J Phi_t the last two terms are
-2 (alpha h(d_s, grad u, grad u) + beta h(d_t, grad u, grad u)) and
(alpha u_s + beta u_t)^2.

For a rank-one immersion of unit-speed curves the integrand reduces to

    (u_ss + eps u_tt)^2 + u_s^2 (-k1 - k_phi^2) + u_t^2 (-k2 - k_psi^2)
        + 2 eps u_s u_t k_phi k_psi

with k1, k2 the Gauss curvatures along the curves.

Derivatives of u are second-order central differences with u extended by
zero; integrals use the trapezoid rule on the lattice.
'''
###################################################################################
from dataclasses import dataclass
from functools import lru_cache
import logging
import numpy as np
from scipy import integrate

from ..Lagrangian.Fundamental_Forms import cubic_form_arrays, induced_metric_arrays, inverse_metric, \
    lagrangian_residual, mean_curvature_coefficients, LAGRANGIAN_TOL, METRIC_TOL
from ..Lagrangian.Immersion import first_derivative
from ..utils.Errors import DegenerateMetricError, ImmersionKindError, NonLagrangianError, SupportError
from .Test_Functions import TestFunction, check_support

logger = logging.getLogger(__name__)

###################################################################################
############################### DISCRETE CALCULUS #################################
###################################################################################

def potential_derivatives(u, h_s, h_t):
    '''u_s, u_t, u_ss, u_st, u_tt by central differences, u extended by zero.'''
    p = np.pad(np.asarray(u, dtype=float), 1)
    c = p[1:-1, 1:-1]
    u_s = (p[2:, 1:-1] - p[:-2, 1:-1]) / (2.0 * h_s)
    u_t = (p[1:-1, 2:] - p[1:-1, :-2]) / (2.0 * h_t)
    u_ss = (p[2:, 1:-1] - 2.0 * c + p[:-2, 1:-1]) / h_s ** 2
    u_tt = (p[1:-1, 2:] - 2.0 * c + p[1:-1, :-2]) / h_t ** 2
    u_st = (p[2:, 2:] - p[2:, :-2] - p[:-2, 2:] + p[:-2, :-2]) / (4.0 * h_s * h_t)
    return u_s, u_t, u_ss, u_st, u_tt


def quadrature(F, h_s, h_t):
    '''Trapezoid rule over the (s, t) lattice.'''
    return float(integrate.trapezoid(integrate.trapezoid(F, dx=h_t, axis=1), dx=h_s))


def _values(u):
    values = u.values if isinstance(u, TestFunction) else np.asarray(u, dtype=float)
    check_support(values)
    return values


def _check_shape(imm, values):
    if values.shape != imm.shape:
        raise SupportError('test function lattice %s does not match the immersion %s' % (values.shape, imm.shape))


###################################################################################
################################### RANK ONE ######################################
###################################################################################

@lru_cache(maxsize=8)
def _rank_one_coefficients(imm):
    c1, c2 = imm.curves
    K = imm.product
    k1 = K.sigma1.gauss(c1.points[:, 0], c1.points[:, 1])
    k2 = K.sigma2.gauss(c2.points[:, 0], c2.points[:, 1])
    return k1[:, None], k2[None, :], c1.k[:, None], c2.k[None, :]


def rank_one_integrand(imm, u):
    values = _values(u)
    _check_shape(imm, values)
    eps = imm.product.eps
    k1, k2, k_phi, k_psi = _rank_one_coefficients(imm)
    u_s, u_t, u_ss, _, u_tt = potential_derivatives(values, imm.h_s, imm.h_t)
    return ((u_ss + eps * u_tt) ** 2 + u_s ** 2 * (-k1 - k_phi ** 2) + u_t ** 2 * (-k2 - k_psi ** 2)
            + 2.0 * eps * u_s * u_t * k_phi * k_psi)


def second_variation_rank_one(imm, u):
    '''
    d2V(u) on a rank-one immersion of unit-speed curves.

    Params:
        imm: Immersion of kind rank-one.
        u:   TestFunction (or array) on the lattice of imm with a zero collar.

    Output:
        float.
    '''
    if imm.kind != 'rank-one':
        raise ImmersionKindError('rank-one second variation needs a rank-one immersion, got %s' % imm.kind)
    return quadrature(rank_one_integrand(imm, u), imm.h_s, imm.h_t)


###################################################################################
################################### GENERAL #######################################
###################################################################################

@dataclass(frozen=True, eq=False)
class InducedGeometry:
    '''Per-node fields of an immersion needed by the general integrand.'''
    ginv: np.ndarray
    gamma: np.ndarray
    volume: np.ndarray
    degenerate: np.ndarray
    h_s: np.ndarray
    h_t: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray


@lru_cache(maxsize=8)
def induced_geometry(imm, tol=LAGRANGIAN_TOL):
    '''
    Inverse induced metric, its Christoffel symbols Gamma^k_ij (from stencil
    derivatives of g_ij), volume density sqrt|det g|, cubic-form matrices
    h(d_s, ., .) and h(d_t, ., .) and the mean curvature coefficients.
    '''
    residual = lagrangian_residual(imm)
    if residual > tol:
        raise NonLagrangianError('second variation needs a Lagrangian immersion (residual %.3g)' % residual)
    g = induced_metric_arrays(imm)
    ginv, det = inverse_metric(g)
    dg = np.stack([first_derivative(g, imm.h_s, 0), first_derivative(g, imm.h_t, 1)], axis=-3)
    # dg[..., a, b, c] = d_a g_bc
    first_kind = 0.5 * (np.einsum('...ijl->...lij', dg) + np.einsum('...jil->...lij', dg) - dg)
    gamma = np.einsum('...kl,...lij->...kij', ginv, first_kind)
    h_sss, h_sst, h_stt, h_ttt = cubic_form_arrays(imm)
    h_s = np.stack([np.stack([h_sss, h_sst], -1), np.stack([h_sst, h_stt], -1)], -2)
    h_t = np.stack([np.stack([h_sst, h_stt], -1), np.stack([h_stt, h_ttt], -1)], -2)
    alpha, beta = mean_curvature_coefficients(imm)
    return InducedGeometry(ginv, gamma, np.sqrt(np.abs(det)), np.abs(det) < METRIC_TOL,
                           h_s, h_t, alpha, beta)


def general_integrand(imm, u):
    values = _values(u)
    _check_shape(imm, values)
    geo = induced_geometry(imm)
    u_s, u_t, u_ss, u_st, u_tt = potential_derivatives(values, imm.h_s, imm.h_t)
    active = (values != 0) | (u_s != 0) | (u_t != 0) | (u_ss != 0) | (u_st != 0) | (u_tt != 0)
    if np.any(active & geo.degenerate):
        raise DegenerateMetricError('induced metric is degenerate inside the support of u')

    du = np.stack([u_s, u_t], axis=-1)
    hess = np.stack([np.stack([u_ss, u_st], -1), np.stack([u_st, u_tt], -1)], -2)
    hess = hess - np.einsum('...kij,...k->...ij', geo.gamma, du)
    with np.errstate(invalid='ignore'):
        laplacian = np.einsum('...ij,...ij->...', geo.ginv, hess)
        grad = np.einsum('...ij,...j->...i', geo.ginv, du)
        V = grad[..., 0:1] * imm.Phi_s + grad[..., 1:2] * imm.Phi_t
        ric = imm.product.ricci_array(imm.Phi, V, V)
        h_s = np.einsum('...i,...ij,...j->...', grad, geo.h_s, grad)
        h_t = np.einsum('...i,...ij,...j->...', grad, geo.h_t, grad)
        flux = geo.alpha * u_s + geo.beta * u_t
        density = (laplacian ** 2 - ric - 2.0 * (geo.alpha * h_s + geo.beta * h_t) + flux ** 2) * geo.volume
    return np.where(active, density, 0.0)


def second_variation_general(imm, u):
    '''
    d2V(u) on any Lagrangian immersion, with gradient and Laplace-Beltrami
    operator of the induced metric (Riemannian or neutral).
    '''
    return quadrature(general_integrand(imm, u), imm.h_s, imm.h_t)


def second_variation(imm, u, formula='auto'):
    '''Dispatch on formula in {'auto', 'rank-one', 'general'}; auto picks rank-one when possible.'''
    if formula == 'rank-one' or (formula == 'auto' and imm.kind == 'rank-one'):
        return second_variation_rank_one(imm, u)
    return second_variation_general(imm, u)


###################################################################################
################################ STABILITY BOUND ##################################
###################################################################################

@dataclass(frozen=True)
class CurvatureBound:
    '''
    Result of the sufficient stability bound k1 <= -2 k_phi^2, k2 <= -2 k_psi^2.
    margin_i is the largest value of k_i + 2 k^2 along curve i.
    '''
    passed: bool
    margin: float
    margin1: float
    margin2: float

    def to_dict(self):
        return {'pass': self.passed, 'margin': self.margin, 'margin1': self.margin1, 'margin2': self.margin2}


def curvature_bound_check(imm):
    '''Evaluate the curvature bound at every curve sample of a rank-one immersion.'''
    if imm.kind != 'rank-one':
        raise ImmersionKindError('the curvature bound needs a rank-one immersion, got %s' % imm.kind)
    k1, k2, k_phi, k_psi = _rank_one_coefficients(imm)
    margin1 = float(np.max(k1 + 2.0 * k_phi ** 2))
    margin2 = float(np.max(k2 + 2.0 * k_psi ** 2))
    margin = max(margin1, margin2)
    logger.debug('Curvature bound margins %.6g, %.6g' % (margin1, margin2))
    return CurvatureBound(bool(margin <= 0.0), margin, margin1, margin2)
