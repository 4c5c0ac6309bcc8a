'''
KahlerProduct.py

The product structure (Sigma1 x Sigma2, G, J, Omega) for a sign eps = +1 or -1:

    G(X, Y)     = g1(X1, Y1) + eps g2(X2, Y2)
    J(X)        = (j1 X1, j2 X2)
    Omega(X, Y) = omega1(X1, Y1) + eps omega2(X2, Y2) = G(JX, Y)

with omega(v, w) = g(jv, w) on each factor. eps = +1 gives a Riemannian
metric, eps = -1 a neutral metric of signature (2, 2).

Points and vectors of the product are handled as arrays whose last axis holds
the four chart components (x1, y1, x2, y2); the array methods of KahlerProduct
evaluate on whole grids at once. ProductVec and Frame4 are the per-point
objects of the public operations.

Curvature comes from the 2-manifold identity R(X,Y)Z = k (g(Y,Z)X - g(X,Z)Y)
on each factor. Ricci is the trace of Z -> R(Z,X)Y, which does not see eps:
Ric = k1 g1 + k2 g2, and the scalar curvature is 2(k1 + eps k2).
'''
###################################################################################
from dataclasses import dataclass
import numpy as np

from ..Surfaces.Surface2D import TangentVec2
from ..utils.Errors import BaseMismatchError, DegenerateFrameError, DomainError, GeometryError

def J(X):
    '''Rotation by +pi/2 in each factor chart.'''
    X = np.asarray(X, dtype=float)
    return np.stack([-X[..., 1], X[..., 0], -X[..., 3], X[..., 2]], axis=-1)


def _dot(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1]


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class KahlerProduct(object):

    def __init__(self, sigma1, sigma2, eps):
        if eps not in (1, -1):
            raise GeometryError('eps must be +1 or -1, got %r' % (eps,))
        self.sigma1 = sigma1
        self.sigma2 = sigma2
        self.eps = int(eps)

    @property
    def name(self):
        return '%s x %s (eps=%+d)' % (self.sigma1.name, self.sigma2.name, self.eps)

    def __repr__(self):
        return 'KahlerProduct(%s)' % self.name

    ###############################################################################
    ## Domain
    def contains(self, P):
        P = np.asarray(P, dtype=float)
        return self.sigma1.contains(P[..., 0], P[..., 1]) & self.sigma2.contains(P[..., 2], P[..., 3])

    def check_domain(self, P):
        if not np.all(self.contains(P)):
            raise DomainError('point outside the product chart of %s' % self.name)

    ###############################################################################
    ## Factor fields
    def lams(self, P):
        P = np.asarray(P, dtype=float)
        return self.sigma1.lam(P[..., 0], P[..., 1]), self.sigma2.lam(P[..., 2], P[..., 3])

    def gauss(self, P):
        P = np.asarray(P, dtype=float)
        return self.sigma1.gauss(P[..., 0], P[..., 1]), self.sigma2.gauss(P[..., 2], P[..., 3])

    def factor_products(self, P, X, Y):
        '''(g1(X1,Y1), g2(X2,Y2)) without the sign eps.'''
        X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
        lam1, lam2 = self.lams(P)
        return lam1 * _dot(X[..., :2], Y[..., :2]), lam2 * _dot(X[..., 2:], Y[..., 2:])

    def connection(self, P, X, Y):
        '''Factorwise Gamma(X, Y), the correction term of the product Levi-Civita connection.'''
        P = np.asarray(P, dtype=float)
        X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
        first = self.sigma1.connection(P[..., 0], P[..., 1], X[..., :2], Y[..., :2])
        second = self.sigma2.connection(P[..., 2], P[..., 3], X[..., 2:], Y[..., 2:])
        return np.concatenate([first, second], axis=-1)

    ###############################################################################
    ## Tensors on arrays
    def metric_array(self, P, X, Y):
        a, b = self.factor_products(P, X, Y)
        return a + self.eps * b

    def reference_array(self, P, X, Y):
        '''The Riemannian reference metric g1 + g2.'''
        a, b = self.factor_products(P, X, Y)
        return a + b

    def omega_array(self, P, X, Y):
        X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
        lam1, lam2 = self.lams(P)
        return lam1 * _cross(X[..., :2], Y[..., :2]) + self.eps * lam2 * _cross(X[..., 2:], Y[..., 2:])

    def riemann_array(self, P, X, Y, Z, W):
        '''G(R(X,Y)Z, W).'''
        k1, k2 = self.gauss(P)
        yz1, yz2 = self.factor_products(P, Y, Z)
        xw1, xw2 = self.factor_products(P, X, W)
        xz1, xz2 = self.factor_products(P, X, Z)
        yw1, yw2 = self.factor_products(P, Y, W)
        return k1 * (yz1 * xw1 - xz1 * yw1) + self.eps * k2 * (yz2 * xw2 - xz2 * yw2)

    def ricci_array(self, P, X, Y):
        k1, k2 = self.gauss(P)
        a, b = self.factor_products(P, X, Y)
        return k1 * a + k2 * b

    def ricci_form_array(self, P, X, Y):
        '''rho(X, Y) = Ric(JX, Y).'''
        return self.ricci_array(P, J(X), Y)

    def scalar_array(self, P):
        k1, k2 = self.gauss(P)
        return 2.0 * (k1 + self.eps * k2)


###################################################################################
################################ PER-POINT TYPES ##################################
###################################################################################

@dataclass(frozen=True, eq=False)
class ProductVec:
    '''
    Tangent vector of the product. point = (x1, y1, x2, y2), comps = the four
    chart components (X1 on Sigma1, X2 on Sigma2).
    '''
    point: np.ndarray
    comps: np.ndarray

    @classmethod
    def at(cls, p1, p2, X1, X2):
        return cls(np.array([p1[0], p1[1], p2[0], p2[1]], dtype=float),
                   np.array([X1[0], X1[1], X2[0], X2[1]], dtype=float))

    @property
    def base(self):
        return (tuple(self.point[:2]), tuple(self.point[2:]))

    @property
    def parts(self):
        p1, p2 = self.base
        return (TangentVec2(p1, tuple(self.comps[:2])), TangentVec2(p2, tuple(self.comps[2:])))

    def __add__(self, other):
        _same_base(self, other)
        return ProductVec(self.point, self.comps + other.comps)

    def __sub__(self, other):
        _same_base(self, other)
        return ProductVec(self.point, self.comps - other.comps)

    def __neg__(self):
        return ProductVec(self.point, -self.comps)

    def __mul__(self, c):
        return ProductVec(self.point, c * self.comps)

    __rmul__ = __mul__


def _same_base(*vectors):
    first = vectors[0].point
    for v in vectors[1:]:
        if not np.array_equal(v.point, first):
            raise BaseMismatchError('vectors are attached to different base points')
    return first


def metric(K, X, Y):
    P = _same_base(X, Y)
    return float(K.metric_array(P, X.comps, Y.comps))


def apply_J(K, X):
    return ProductVec(X.point, J(X.comps))


def omega(K, X, Y):
    P = _same_base(X, Y)
    return float(K.omega_array(P, X.comps, Y.comps))


def riemann(K, X, Y, Z, W):
    '''The (0,4) tensor G(R(X,Y)Z, W).'''
    P = _same_base(X, Y, Z, W)
    return float(K.riemann_array(P, X.comps, Y.comps, Z.comps, W.comps))


###################################################################################
##################################### FRAMES ######################################
###################################################################################

@dataclass(frozen=True, eq=False)
class Frame4:
    '''Four ProductVec at a common point and their signature tags |E_i|^2.'''
    vectors: tuple
    signs: tuple

    @property
    def point(self):
        return self.vectors[0].point

    def matrix(self):
        '''Rows are the chart components of E_1..E_4.'''
        return np.array([E.comps for E in self.vectors])

    def gram(self, K):
        M = self.matrix()
        return K.metric_array(self.point, M[:, None, :], M[None, :, :])


def factor_frames(K, p):
    '''
    Oriented orthonormal frames (e1, e2) of Sigma1 and (v1, v2) of Sigma2 at
    p = (x1, y1, x2, y2), normalized from the chart bases, as 4-component arrays.
    '''
    lam1, lam2 = K.lams(np.asarray(p, dtype=float))
    e1 = np.array([1.0, 0.0, 0.0, 0.0]) / np.sqrt(lam1)
    e2 = np.array([0.0, 1.0, 0.0, 0.0]) / np.sqrt(lam1)
    v1 = np.array([0.0, 0.0, 1.0, 0.0]) / np.sqrt(lam2)
    v2 = np.array([0.0, 0.0, 0.0, 1.0]) / np.sqrt(lam2)
    return e1, e2, v1, v2


def build_adapted_frame(K, p):
    '''
    The adapted frame used for the curvature blocks.

    eps = +1:  E1 = (e1, v1+v2)/sqrt3, E2 = JE1, E3 = (e1-e2, -v1)/sqrt3, E4 = JE3,
               all of square norm +1.
    eps = -1:  E1 = (e1, v1+v2), E2 = JE1, E3 = (e1-e2, v1), E4 = JE3,
               square norms (-1, -1, +1, +1).
    '''
    p = np.asarray(p, dtype=float)
    K.check_domain(p)
    e1, e2, v1, v2 = factor_frames(K, p)
    if K.eps == 1:
        E1 = (e1 + v1 + v2) / np.sqrt(3.0)
        E3 = (e1 - e2 - v1) / np.sqrt(3.0)
        signs = (1, 1, 1, 1)
    else:
        E1 = e1 + v1 + v2
        E3 = e1 - e2 + v1
        signs = (-1, -1, 1, 1)
    comps = (E1, J(E1), E3, J(E3))
    return Frame4(tuple(ProductVec(p, c) for c in comps), signs)


def rotated_frame(F, theta1, theta2):
    '''Rotate (E1, E2) by theta1 and (E3, E4) by theta2 inside their J-planes.'''
    E1, E2, E3, E4 = (E.comps for E in F.vectors)
    R1 = np.cos(theta1) * E1 + np.sin(theta1) * E2
    R3 = np.cos(theta2) * E3 + np.sin(theta2) * E4
    comps = (R1, J(R1), R3, J(R3))
    return Frame4(tuple(ProductVec(F.point, c) for c in comps), F.signs)


def check_frame(K, F, tol=1e-8):
    G = F.gram(K)
    if not np.allclose(G, np.diag(F.signs), atol=tol, rtol=0.0):
        raise DegenerateFrameError('frame is not orthonormal with signs %s' % (F.signs,))
    return G


def gram_signature(K, F):
    '''(number of positive, number of negative) eigenvalues of the frame Gram matrix.'''
    eig = np.linalg.eigvalsh(F.gram(K))
    return int(np.sum(eig > 0)), int(np.sum(eig < 0))


###################################################################################
#################################### CONTRACTIONS #################################
###################################################################################

def ricci(K, X, Y, frame=None):
    '''
    Ric(X, Y) = sum_i |E_i|^2 G(R(E_i, X)Y, E_i) over an orthonormal frame
    (the adapted frame by default).
    '''
    P = _same_base(X, Y)
    F = build_adapted_frame(K, P) if frame is None else frame
    check_frame(K, F)
    return float(sum(s * K.riemann_array(P, E.comps, X.comps, Y.comps, E.comps)
                     for s, E in zip(F.signs, F.vectors)))


def ricci_form(K, X, Y, frame=None):
    return ricci(K, apply_J(K, X), Y, frame)


def scalar_curvature(K, p, frame=None):
    '''sum_i |E_i|^2 Ric(E_i, E_i); equals 2(k1 + eps k2).'''
    p = np.asarray(p, dtype=float)
    F = build_adapted_frame(K, p) if frame is None else frame
    return float(sum(s * ricci(K, E, E, F) for s, E in zip(F.signs, F.vectors)))


def random_vector(K, p, rng, scale=1.0):
    return ProductVec(np.asarray(p, dtype=float), scale * rng.standard_normal(4))


def random_point(K, rng, box=0.8):
    '''Uniform chart point of both factor domains inside [-box, box]^4.'''
    for _ in range(1000):
        p = rng.uniform(-box, box, size=4)
        if K.contains(p):
            return p
    raise DomainError('no sample point found inside %s' % K.name)
