'''
Rank_Two_Algebra.py

Frame coefficients of a Lagrangian immersion whose factor projections both
have rank 2.

With an orthonormal tangent frame (e1, e2), |e1|^2 = 1, |e2|^2 = eps, and the
factor frames s1 = d_x/sqrt(lambda1), s2 = d_y/sqrt(lambda1) on Sigma1 (same on
Sigma2), write

    e1 = (lam1 s1 + lam2 s2,          mu1 s1 + mu2 s2)
    e2 = (lam1_bar s1 + lam2_bar s2,  mu1_bar s1 + mu2_bar s2)

and a = lam1^2 + lam2^2, b = mu1^2 + mu2^2 (bars likewise). Then

    a b = a_bar b_bar,   a + eps a_bar = 1,   eps b + b_bar = 1,
    a + eps b = 1,       a_bar + eps b_bar = eps,

and the Gauss curvatures satisfy k1(phi) = eps k2(psi).
'''
###################################################################################
from dataclasses import dataclass
import numpy as np

from ..utils.Errors import DegenerateFrameError, RankError
from .Fundamental_Forms import check_lagrangian, projected_rank, LAGRANGIAN_TOL

FRAME_TOL = 1e-12

@dataclass(frozen=True)
class LagrangianFrameCoefficients:
    lam1: float
    lam2: float
    mu1: float
    mu2: float
    lam1_bar: float
    lam2_bar: float
    mu1_bar: float
    mu2_bar: float
    eps: int

    @property
    def a(self):
        return self.lam1 ** 2 + self.lam2 ** 2

    @property
    def b(self):
        return self.mu1 ** 2 + self.mu2 ** 2

    @property
    def a_bar(self):
        return self.lam1_bar ** 2 + self.lam2_bar ** 2

    @property
    def b_bar(self):
        return self.mu1_bar ** 2 + self.mu2_bar ** 2

    def identity_residuals(self):
        e = self.eps
        a, b, ab, bb = self.a, self.b, self.a_bar, self.b_bar
        return {
            'ab = a_bar b_bar': abs(a * b - ab * bb),
            'a + eps a_bar = 1': abs(a + e * ab - 1.0),
            'eps b + b_bar = 1': abs(e * b + bb - 1.0),
            'a + eps b = 1': abs(a + e * b - 1.0),
            'a_bar + eps b_bar = eps': abs(ab + e * bb - e),
        }


def _normalize(K, P, v):
    n2 = float(K.metric_array(P, v, v))
    if abs(n2) < FRAME_TOL:
        raise DegenerateFrameError('tangent direction is null for the induced metric')
    return v / np.sqrt(abs(n2)), int(np.sign(n2))


def tangent_frame(imm, node):
    '''
    Orthonormal tangent frame (e1, e2) with |e1|^2 = 1, |e2|^2 = eps by
    Gram-Schmidt under G, starting from the coordinate direction of larger
    |G(d, d)|.
    '''
    K = imm.product
    P, Ps, Pt = imm.Phi[node], imm.Phi_s[node], imm.Phi_t[node]
    if abs(K.metric_array(P, Ps, Ps)) >= abs(K.metric_array(P, Pt, Pt)):
        first, other = Ps, Pt
    else:
        first, other = Pt, Ps
    u, su = _normalize(K, P, first)
    w = other - su * float(K.metric_array(P, other, u)) * u
    w, sw = _normalize(K, P, w)
    if K.eps == 1:
        if su != 1 or sw != 1:
            raise DegenerateFrameError('induced metric is not positive definite at node %s' % (node,))
        return u, w
    if {su, sw} != {1, -1}:
        raise DegenerateFrameError('induced metric is not of signature (1, 1) at node %s' % (node,))
    return (u, w) if su == 1 else (w, u)


def frame_coefficients(imm, node, tol=LAGRANGIAN_TOL):
    '''
    LagrangianFrameCoefficients at a node. Raises RankError unless both factor
    projections have rank 2 and NonLagrangianError off the Lagrangian locus.
    '''
    rank = projected_rank(imm, node)
    if rank < 2:
        raise RankError('projected rank is %d at node %s, frame coefficients need rank 2' % (rank, node))
    check_lagrangian(imm, node, tol)
    e1, e2 = tangent_frame(imm, node)
    lam1, lam2 = imm.product.lams(imm.Phi[node])
    r1, r2 = np.sqrt(lam1), np.sqrt(lam2)
    return LagrangianFrameCoefficients(
        r1 * e1[0], r1 * e1[1], r2 * e1[2], r2 * e1[3],
        r1 * e2[0], r1 * e2[1], r2 * e2[2], r2 * e2[3],
        imm.product.eps)


def rank_two_constraint_residual(imm, node, tol=LAGRANGIAN_TOL):
    '''|k1(phi) - eps k2(psi)| at a rank-two Lagrangian node.'''
    frame_coefficients(imm, node, tol)
    k1, k2 = imm.product.gauss(imm.Phi[node])
    return float(abs(k1 - imm.product.eps * k2))
