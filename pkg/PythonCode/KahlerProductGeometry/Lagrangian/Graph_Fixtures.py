'''
Graph_Fixtures.py

Chart maps f : Sigma1 -> Sigma2 whose graphs are Lagrangian in the product,
written as pairs of DSL expressions in (x, y).

The graph of f is Lagrangian exactly when

    lambda2(f) det(Df) = -eps lambda1,

i.e. f is area-preserving and reverses orientation for eps = +1, preserves it
for eps = -1. For the centred built-in models a radial map r -> rho(r) with
A2(rho(r)) = A1(r) (chart disk areas) matches the areas; composing it with
the rotation by tau(r) = a r^2 and, for eps = +1, the reflection (x, y) -> (x, -y)
keeps the graph Lagrangian for any twist a.
'''
###################################################################################
from ..utils.Errors import GeometryError

R2 = '(x^2 + y^2)'


def _source_density(S):
    '''u(R) = A(r)/(pi r^2) of the source chart, R = r^2, as text.'''
    if S.model == 'plane':
        return '1'
    if S.model == 'sphere':
        return '4/(%r*(1 + %s))' % (float(S.curvature), R2)
    if S.model == 'hyperbolic':
        return '4/(%r*(1 - %s))' % (-float(S.curvature), R2)
    raise GeometryError('area matching needs a built-in model, got %s' % S.name)


def _scale_square(S1, S2):
    '''m^2 with rho = m r solving A2(rho) = A1(r).'''
    u = '(%s)' % _source_density(S1)
    if S2.model == 'plane':
        return u
    if S2.model == 'sphere':
        k = float(S2.curvature)
        return '(%s*%r)/(4 - %s*%s*%r)' % (u, k, R2, u, k)
    if S2.model == 'hyperbolic':
        k = -float(S2.curvature)
        return '(%s*%r)/(4 + %s*%s*%r)' % (u, k, R2, u, k)
    raise GeometryError('area matching needs a built-in model, got %s' % S2.name)


def area_scale(S1, S2):
    '''Radial scale m(x, y) of the area-matching map as text.'''
    if S1.model == S2.model and S1.curvature == S2.curvature:
        return '1'
    return 'sqrt(%s)' % _scale_square(S1, S2)


def twist_map(K, twist=0.3):
    '''
    Area-matched, twisted radial map Sigma1 -> Sigma2 with a Lagrangian graph.

    eps = +1:  m (x cos tau + y sin tau, x sin tau - y cos tau)
    eps = -1:  m (x cos tau - y sin tau, x sin tau + y cos tau)
    with tau = twist (x^2 + y^2).
    '''
    m = area_scale(K.sigma1, K.sigma2)
    tau = '(%r*%s)' % (float(twist), R2)
    c, s = 'cos%s' % tau, 'sin%s' % tau
    if K.eps == 1:
        fx, fy = 'x*%s + y*%s' % (c, s), 'x*%s - y*%s' % (s, c)
    else:
        fx, fy = 'x*%s - y*%s' % (c, s), 'x*%s + y*%s' % (s, c)
    return '%s*(%s)' % (m, fx), '%s*(%s)' % (m, fy)


def inversion_map(K):
    '''
    Inversion in the unit circle, an isometry of the unit sphere chart:
    (x, y)/(x^2+y^2) for eps = +1, (x, -y)/(x^2+y^2) for eps = -1.
    Grids must stay away from the origin.
    '''
    if K.eps == 1:
        return 'x/%s' % R2, 'y/%s' % R2
    return 'x/%s' % R2, '-y/%s' % R2


def conjugation_map(K):
    '''(x, -y) for eps = +1 and the identity for eps = -1; Lagrangian for equal flat factors.'''
    return ('x', '-y') if K.eps == 1 else ('x', 'y')


def stretch_map():
    '''(2x, y); its graph is not Lagrangian in a flat product.'''
    return '2*x', 'y'


def constant_map(p):
    return repr(float(p[0])), repr(float(p[1]))
