'''
Surface2D.py

Riemannian 2-manifolds given in a conformal chart, g = lambda(x,y)(dx^2 + dy^2).

A Surface2D owns its conformal factor as an Expr together with the exact
first and second partial derivatives, and exposes the pointwise geometry that
the rest of the package is built on: inner product, rotation j, area form,
Christoffel symbols and Gauss curvature. Every pointwise method accepts
scalars or numpy arrays of chart coordinates.

Christoffel symbols of a conformal chart, with a = lambda_x/(2 lambda) and
b = lambda_y/(2 lambda):

    G^1_11 =  a     G^1_12 = G^1_21 =  b     G^1_22 = -a
    G^2_11 = -b     G^2_12 = G^2_21 =  a     G^2_22 =  b

Built-in models: plane (lambda = 1), sphere (stereographic chart of the unit
sphere, lambda = 4/(1+x^2+y^2)^2) and hyperbolic (Poincare disk,
lambda = 4/(1-x^2-y^2)^2). sphere() and hyperbolic() take a curvature
magnitude; scaled() multiplies any conformal factor by c^2.
'''
###################################################################################
from dataclasses import dataclass
import numpy as np

from .. import Metric_DSL as dsl
from ..utils.Errors import DomainError, GeometryError

###################################################################################
################################# CHART DOMAINS ###################################
###################################################################################

@dataclass(frozen=True)
class RectDomain:
    x0: float
    x1: float
    y0: float
    y1: float

    def contains(self, x, y):
        return (x > self.x0) & (x < self.x1) & (y > self.y0) & (y < self.y1)

    def describe(self):
        return {'type': 'rect', 'bounds': [self.x0, self.x1, self.y0, self.y1]}


@dataclass(frozen=True)
class DiskDomain:
    cx: float
    cy: float
    radius: float

    def contains(self, x, y):
        return (x - self.cx) ** 2 + (y - self.cy) ** 2 < self.radius ** 2

    def describe(self):
        return {'type': 'disk', 'center': [self.cx, self.cy], 'radius': self.radius}


@dataclass(frozen=True)
class TangentVec2:
    '''Tangent vector (v1, v2) in the chart basis at base = (x, y).'''
    base: tuple
    components: tuple

    def norm2(self, S):
        return S.inner(self.base, self.components, self.components)

    def norm(self, S):
        return float(np.sqrt(self.norm2(S)))

    def rotated(self):
        return TangentVec2(self.base, tuple(rotate(np.asarray(self.components, dtype=float))))


def rotate(v):
    '''The rotation j of a conformal chart, (v1, v2) -> (-v2, v1), on the last axis.'''
    v = np.asarray(v, dtype=float)
    out = np.empty_like(v)
    out[..., 0] = -v[..., 1]
    out[..., 1] = v[..., 0]
    return out

###################################################################################
#################################### SURFACE ######################################
###################################################################################

class Surface2D(object):
    '''
    Conformal chart (name, lambda, domain).

    model/curvature describe the built-in constant curvature models
    ('plane', 'sphere', 'hyperbolic'); user metrics carry model None.
    '''

    def __init__(self, name, lam, domain, model=None, curvature=None):
        self.name = name
        self.lam_expr = dsl.as_expr(lam)
        self.domain = domain
        self.model = model
        self.curvature = curvature
        extra = self.lam_expr.variables() - {'x', 'y'}
        if extra:
            raise GeometryError('conformal factor of %s depends on %s' % (name, ', '.join(sorted(extra))))
        self.lam_x_expr = dsl.differentiate(self.lam_expr, 'x')
        self.lam_y_expr = dsl.differentiate(self.lam_expr, 'y')
        self.lam_xx_expr = dsl.differentiate(self.lam_x_expr, 'x')
        self.lam_yy_expr = dsl.differentiate(self.lam_y_expr, 'y')

    def __repr__(self):
        return 'Surface2D(%s, lambda=%s)' % (self.name, self.lam_expr)

    ###############################################################################
    ## Scalar fields
    def _eval(self, expr, x, y):
        return dsl.eval_expr(expr, {'x': x, 'y': y})

    def contains(self, x, y):
        return self.domain.contains(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def check_domain(self, x, y):
        inside = self.contains(x, y)
        if not np.all(inside):
            raise DomainError('point outside the chart domain of %s' % self.name)

    def lam(self, x, y):
        return self._eval(self.lam_expr, x, y)

    def lam_derivatives(self, x, y):
        '''lambda, lambda_x, lambda_y'''
        return (self._eval(self.lam_expr, x, y), self._eval(self.lam_x_expr, x, y),
                self._eval(self.lam_y_expr, x, y))

    ###############################################################################
    ## Pointwise geometry
    def inner(self, p, v, w):
        v, w = np.asarray(v, dtype=float), np.asarray(w, dtype=float)
        return self.lam(p[0], p[1]) * (v[..., 0] * w[..., 0] + v[..., 1] * w[..., 1])

    def area(self, p, v, w):
        '''omega(v, w) = g(jv, w) = lambda (v1 w2 - v2 w1)'''
        v, w = np.asarray(v, dtype=float), np.asarray(w, dtype=float)
        return self.lam(p[0], p[1]) * (v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0])

    def christoffel_ab(self, x, y):
        lam, lam_x, lam_y = self.lam_derivatives(x, y)
        return lam_x / (2.0 * lam), lam_y / (2.0 * lam)

    def connection(self, x, y, v, w):
        '''Gamma^k_ij v^i w^j as an array with components on the last axis.'''
        a, b = self.christoffel_ab(x, y)
        v, w = np.asarray(v, dtype=float), np.asarray(w, dtype=float)
        sym = v[..., 0] * w[..., 0] - v[..., 1] * w[..., 1]
        cross = v[..., 0] * w[..., 1] + v[..., 1] * w[..., 0]
        return np.stack([a * sym + b * cross, -b * sym + a * cross], axis=-1)

    def gauss(self, x, y):
        lam, lam_x, lam_y = self.lam_derivatives(x, y)
        lam_xx = self._eval(self.lam_xx_expr, x, y)
        lam_yy = self._eval(self.lam_yy_expr, x, y)
        # Laplacian of log(lambda)
        lap_log = (lam_xx + lam_yy) / lam - (lam_x ** 2 + lam_y ** 2) / lam ** 2
        return -lap_log / (2.0 * lam)


###################################################################################
################################### OPERATIONS ####################################
###################################################################################

def christoffel(S, p):
    '''
    Christoffel symbols at chart point p.

    Output:
        (G^1_11, G^1_12, G^2_11, G^2_12); the remaining symbols follow from the
        conformal table in the module docstring.
    '''
    S.check_domain(p[0], p[1])
    a, b = S.christoffel_ab(p[0], p[1])
    return a, b, -b, a


def gauss_curvature(S, p):
    '''kappa = -(1/(2 lambda)) Laplacian(log lambda) at chart point p.'''
    S.check_domain(p[0], p[1])
    return S.gauss(p[0], p[1])


def levi_civita(S, p, v, w, dw):
    '''
    Covariant derivative D_v W at p, where w is the value of the field W at p
    and dw its chart derivative along v.
    '''
    return np.asarray(dw, dtype=float) + S.connection(p[0], p[1], v, w)

###################################################################################
################################ BUILT-IN MODELS ##################################
###################################################################################

def plane(extent=50.0):
    return Surface2D('plane', '1', RectDomain(-extent, extent, -extent, extent),
                     model='plane', curvature=0.0)


def sphere(curvature=1.0, radius=100.0):
    if curvature <= 0:
        raise GeometryError('sphere curvature must be positive')
    name = 'sphere' if curvature == 1.0 else 'sphere(k=%r)' % curvature
    lam = '4/(1 + x^2 + y^2)^2' if curvature == 1.0 else '4/(%r*(1 + x^2 + y^2)^2)' % curvature
    return Surface2D(name, lam, DiskDomain(0.0, 0.0, radius), model='sphere', curvature=curvature)


def hyperbolic(curvature=-1.0):
    if curvature >= 0:
        raise GeometryError('hyperbolic curvature must be negative')
    name = 'hyperbolic' if curvature == -1.0 else 'hyperbolic(k=%r)' % curvature
    lam = '4/(1 - x^2 - y^2)^2' if curvature == -1.0 else '4/(%r*(1 - x^2 - y^2)^2)' % -curvature
    return Surface2D(name, lam, DiskDomain(0.0, 0.0, 1.0), model='hyperbolic', curvature=curvature)


def scaled(S, c):
    '''The surface with conformal factor c^2 lambda; Gauss curvature divides by c^2.'''
    c2 = float(c) ** 2
    curvature = None if S.curvature is None else S.curvature / c2
    return Surface2D('%s*%r' % (S.name, float(c)), dsl.Mul(dsl.Const(c2), S.lam_expr), S.domain,
                     model=S.model, curvature=curvature)


BUILTIN_SURFACES = {
    'plane': plane,
    'sphere': sphere,
    'hyperbolic': hyperbolic,
}


def disk_area(S, r):
    '''
    Area of the centred chart disk of radius r for a built-in model.

    plane: pi r^2; sphere of curvature k: 4 pi r^2/(k(1+r^2));
    hyperbolic of curvature -k: 4 pi r^2/(k(1-r^2)).
    '''
    r2 = np.asarray(r, dtype=float) ** 2
    if S.model == 'plane':
        return np.pi * r2
    if S.model == 'sphere':
        return 4.0 * np.pi * r2 / (S.curvature * (1.0 + r2))
    if S.model == 'hyperbolic':
        return 4.0 * np.pi * r2 / (-S.curvature * (1.0 - r2))
    raise GeometryError('no closed-form disk area for surface %s' % S.name)
