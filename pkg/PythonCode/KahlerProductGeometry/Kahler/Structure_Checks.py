'''
Structure_Checks.py

Finite-difference checks of the Kahler structure of a product:

    nijenhuis                N_J(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]
    kahler_condition         G((nabla_X J)Y, Z)
    d_omega                  dOmega(X, Y, Z)
    fd_gauss_curvature       Gauss curvature from differentiated Christoffel symbols

Vector fields are affine in the chart, V(q) = V(p) + A (q - p); with A = 0
they are the constant-component fields. Directional derivatives use central
differences with step 1e-5.
'''
###################################################################################
import numpy as np

from .KahlerProduct import J, ProductVec, _same_base

FD_STEP = 1e-5

def affine_field(V, A=None):
    '''Field q -> V(p) + A (q - p) for a ProductVec V.'''
    p, v0 = V.point, V.comps
    A = np.zeros((4, 4)) if A is None else np.asarray(A, dtype=float)

    def field(q):
        return v0 + A @ (np.asarray(q, dtype=float) - p)
    return field


def directional(F, p, v, step=FD_STEP):
    '''Central difference of the chart field F at p along v.'''
    return (F(p + step * v) - F(p - step * v)) / (2.0 * step)


def lie_bracket(Xf, Yf, p, step=FD_STEP):
    return directional(Yf, p, Xf(p), step) - directional(Xf, p, Yf(p), step)


def _rotated(F):
    return lambda q: J(F(q))


def nijenhuis(K, p, X, Y, AX=None, AY=None, step=FD_STEP):
    '''
    Nijenhuis tensor of J at p for X, Y extended as affine chart fields.

    Output:
        ProductVec N_J(X, Y).
    '''
    p = _same_base(X, Y)
    Xf, Yf = affine_field(X, AX), affine_field(Y, AY)
    JXf, JYf = _rotated(Xf), _rotated(Yf)
    N = (lie_bracket(JXf, JYf, p, step) - J(lie_bracket(JXf, Yf, p, step))
         - J(lie_bracket(Xf, JYf, p, step)) - lie_bracket(Xf, Yf, p, step))
    return ProductVec(p, N)


def reference_norm(K, V):
    '''Norm of a ProductVec in the Riemannian reference metric g1 + g2.'''
    return float(np.sqrt(K.reference_array(V.point, V.comps, V.comps)))


def covariant_derivative(K, p, X, Vf, step=FD_STEP):
    '''nabla_X V at p for a chart field Vf.'''
    return directional(Vf, p, X, step) + K.connection(p, X, Vf(p))


def kahler_condition(K, X, Y, Z, AY=None, step=FD_STEP):
    '''G((nabla_X J)Y, Z) with Y extended as an affine field.'''
    p = _same_base(X, Y, Z)
    Yf = affine_field(Y, AY)
    nabla_JY = covariant_derivative(K, p, X.comps, _rotated(Yf), step)
    J_nabla_Y = J(covariant_derivative(K, p, X.comps, Yf, step))
    return float(K.metric_array(p, nabla_JY - J_nabla_Y, Z.comps))


def d_omega(K, X, Y, Z, step=FD_STEP):
    '''dOmega(X, Y, Z) for constant chart fields: the cyclic sum of X(Omega(Y, Z)).'''
    p = _same_base(X, Y, Z)
    x, y, z = X.comps, Y.comps, Z.comps

    def derivative_along(v, a, b):
        return (K.omega_array(p + step * v, a, b) - K.omega_array(p - step * v, a, b)) / (2.0 * step)

    return float(derivative_along(x, y, z) + derivative_along(y, z, x) + derivative_along(z, x, y))


###################################################################################
## Curvature oracle

def christoffel_table(S, x, y):
    '''Gamma[a, b, c] = Gamma^a_bc of a conformal chart.'''
    a, b = S.christoffel_ab(x, y)
    return np.array([[[a, b], [b, -a]],
                     [[-b, a], [a, b]]])


def fd_gauss_curvature(S, p, step=1e-4):
    '''
    Gauss curvature R^1_212 / lambda with the derivatives of the Christoffel
    symbols taken by central differences.
    '''
    x, y = p
    Gam = christoffel_table(S, x, y)
    dGx = (christoffel_table(S, x + step, y) - christoffel_table(S, x - step, y)) / (2.0 * step)
    dGy = (christoffel_table(S, x, y + step) - christoffel_table(S, x, y - step)) / (2.0 * step)
    R1_212 = (dGx[0, 1, 1] - dGy[0, 0, 1]
              + sum(Gam[0, 0, e] * Gam[e, 1, 1] - Gam[0, 1, e] * Gam[e, 0, 1] for e in range(2)))
    return float(R1_212 / S.lam(x, y))
