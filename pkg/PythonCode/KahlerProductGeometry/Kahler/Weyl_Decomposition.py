'''
Weyl_Decomposition.py

Weyl tensor of the product metric in the adapted frame and its blocks on
self-dual and anti-self-dual 2-forms.

In the adapted frame E_1..E_4 with Gram matrix G, the curvature components are
R_ijkl = G(R(E_i,E_j)E_l, E_k), so that R_ijij is the sectional curvature
numerator, and

    W_ijkl = R_ijkl - 1/2 (G_ik Ric_jl - G_il Ric_jk + G_jl Ric_ik - G_jk Ric_il)
             + R/6 (G_ik G_jl - G_il G_jk).

The 2-form bases are (e_ij = e_i ^ e_j):

    eps = +1:  s1 = e12 +- e34,  s2 = e13 -+ e24,  s3 = e14 +- e23
    eps = -1:  s1 = e12 +- e34,  s2 = e13 +- e24,  s3 = e14 -+ e23

A block entry is the pair sum W(sa, sb) = sum_{i<j, k<l} sa_ij sb_kl W_ijkl
of the unnormalized forms, e.g. W+_11 = W_1212 + W_3434 + 2 W_1234.
'''
###################################################################################
import logging
import numpy as np

from .KahlerProduct import build_adapted_frame
from ..utils.Errors import EmptySampleError

logger = logging.getLogger(__name__)

def _two_form(i, j):
    c = np.zeros((4, 4))
    c[i - 1, j - 1] = 1.0
    c[j - 1, i - 1] = -1.0
    return c


def two_form_bases(eps):
    '''(plus basis, minus basis), each a list of three antisymmetric 4x4 arrays.'''
    e = _two_form
    if eps == 1:
        plus = [e(1, 2) + e(3, 4), e(1, 3) - e(2, 4), e(1, 4) + e(2, 3)]
        minus = [e(1, 2) - e(3, 4), e(1, 3) + e(2, 4), e(1, 4) - e(2, 3)]
    else:
        plus = [e(1, 2) + e(3, 4), e(1, 3) + e(2, 4), e(1, 4) - e(2, 3)]
        minus = [e(1, 2) - e(3, 4), e(1, 3) - e(2, 4), e(1, 4) + e(2, 3)]
    return plus, minus


def frame_curvature(K, frame):
    '''
    Curvature components in a frame.

    Output:
        G (4,4), R_ijkl (4,4,4,4), Ric_jl (4,4), scalar R.
    '''
    P = frame.point
    M = frame.matrix()
    lam1, lam2 = K.lams(P)
    k1, k2 = K.gauss(P)
    g1 = lam1 * M[:, :2] @ M[:, :2].T
    g2 = lam2 * M[:, 2:] @ M[:, 2:].T

    def constant_curvature_part(g):
        return np.einsum('ik,jl->ijkl', g, g) - np.einsum('il,jk->ijkl', g, g)

    Rm = k1 * constant_curvature_part(g1) + K.eps * k2 * constant_curvature_part(g2)
    G = g1 + K.eps * g2
    Ginv = np.linalg.inv(G)
    Ric = np.einsum('ik,ijkl->jl', Ginv, Rm)
    R = float(np.einsum('jl,jl->', Ginv, Ric))
    return G, Rm, Ric, R


def weyl_tensor(G, Rm, Ric, R):
    kn = (np.einsum('ik,jl->ijkl', G, Ric) - np.einsum('il,jk->ijkl', G, Ric)
          + np.einsum('jl,ik->ijkl', G, Ric) - np.einsum('jk,il->ijkl', G, Ric))
    gg = np.einsum('ik,jl->ijkl', G, G) - np.einsum('il,jk->ijkl', G, G)
    return Rm - 0.5 * kn + R / 6.0 * gg


def _block(W, basis):
    # full ordered sums count every pair four times
    out = np.empty((3, 3))
    for a, sa in enumerate(basis):
        for b, sb in enumerate(basis):
            out[a, b] = 0.25 * np.einsum('ij,kl,ijkl->', sa, sb, W)
    return out


def weyl_blocks(K, p, frame=None):
    '''
    Self-dual and anti-self-dual Weyl blocks at p = (x1, y1, x2, y2).

    Output:
        (Wplus, Wminus), 3x3 arrays in the bases of two_form_bases(K.eps).
    '''
    F = build_adapted_frame(K, p) if frame is None else frame
    G, Rm, Ric, R = frame_curvature(K, F)
    W = weyl_tensor(G, Rm, Ric, R)
    plus, minus = two_form_bases(K.eps)
    return _block(W, plus), _block(W, minus)


def weyl_norms(K, sample_points):
    '''Per point max(|W+|_F, |W-|_F) over an (n, 4) array of points.'''
    points = np.atleast_2d(np.asarray(sample_points, dtype=float))
    if points.shape[0] == 0 or points.size == 0:
        raise EmptySampleError('conformal flatness needs at least one sample point')
    norms = np.empty(points.shape[0])
    for n, p in enumerate(points):
        Wp, Wm = weyl_blocks(K, p)
        norms[n] = max(np.linalg.norm(Wp), np.linalg.norm(Wm))
    return norms


def conformal_flatness_residual(K, sample_points):
    '''Max over the sample of the Frobenius norms of both Weyl blocks.'''
    norms = weyl_norms(K, sample_points)
    logger.debug('Weyl residual on %s: %.3e' % (K.name, norms.max()))
    return float(norms.max())
