'''
Curve_Integration.py

Curves with prescribed geodesic curvature on a Surface2D.

A unit-speed curve gamma with geodesic curvature k satisfies the Frenet
equation D_{gamma'} gamma' = k(s) j gamma'. In a conformal chart this is the
first-order system for the state (x, y, v1, v2):

    x'  = v
    v'  = -Gamma(v, v) + k(s) j v

integrated here with the classical fixed-step Runge-Kutta scheme. After every
step the tangent is renormalized to unit g-norm. Geodesics are k = 0, circles
constant k, Cornu spirals k(s) = a s + b.
'''
###################################################################################
from dataclasses import dataclass
import logging
import numpy as np
import pandas as pd

from .. import Metric_DSL as dsl
from ..utils.Dtypes import dtypes_curve
from ..utils.Errors import CurveSpeedError, DomainExitError, NonFiniteStateError, \
    ExprDomainError, GeometryError

logger = logging.getLogger(__name__)

CURVE_COLUMNS = list(dtypes_curve)

@dataclass(frozen=True, eq=False)
class Curve:
    '''
    Arclength-sampled curve. Arrays are indexed by sample:
        s (n,), points (n, 2), tangents (n, 2) in chart components, k (n,).
    '''
    surface: object
    s: np.ndarray
    points: np.ndarray
    tangents: np.ndarray
    k: np.ndarray
    step: float
    profile: object = None

    def __len__(self):
        return len(self.s)

    def sample(self, i):
        return self.s[i], tuple(self.points[i]), tuple(self.tangents[i]), self.k[i]

    @property
    def samples(self):
        return [self.sample(i) for i in range(len(self))]

    @property
    def length(self):
        return float(self.s[-1] - self.s[0])

    def speeds(self):
        '''g-norm of the stored tangents.'''
        return np.sqrt(self.surface.inner(self.points.T, self.tangents, self.tangents))

    def to_frame(self):
        return pd.DataFrame({'s': self.s, 'x': self.points[:, 0], 'y': self.points[:, 1],
                             'v1': self.tangents[:, 0], 'v2': self.tangents[:, 1], 'k': self.k},
                            columns=CURVE_COLUMNS).astype(dtypes_curve)

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format='%.17g')


###################################################################################
################################# INTEGRATION #####################################
###################################################################################

def _rhs(S, curvature, s, state):
    x, y, v = state[0], state[1], state[2:]
    accel = -S.connection(x, y, v, v) + curvature(s) * np.array([-v[1], v[0]])
    return np.concatenate([v, accel])


def _unit(S, state):
    lam = S.lam(state[0], state[1])
    speed = np.sqrt(lam * (state[2] ** 2 + state[3] ** 2))
    state[2:] /= speed
    return state


def integrate_prescribed_curvature(S, p0, theta0, k, L, h=1e-3):
    '''
    Integrate a unit-speed curve with geodesic curvature k(s).

    Params:
        S:      Surface2D.
        p0:     chart start point (x, y), inside the domain.
        theta0: float, angle of the initial direction against the chart x-axis.
        k:      Expr in s, expression string or number.
        L:      float > 0, total length.
        h:      float > 0, step. The step actually used is L/n with n = ceil(L/h),
                so that all arclength increments are equal.

    Output:
        Curve with n+1 samples.

    Raises DomainExitError with the exit arclength when the trajectory leaves
    the chart domain, NonFiniteStateError on non-finite states.
    '''
    if L <= 0 or h <= 0:
        raise GeometryError('curve length and step must be positive')
    S.check_domain(p0[0], p0[1])
    profile = dsl.as_expr(k)
    if profile.variables() - {'s'}:
        raise GeometryError('curvature profile may only depend on s')

    def curvature(s):
        return dsl.eval_expr(profile, {'s': s})

    n = int(np.ceil(L / h - 1e-9))
    step = L / n
    s_grid = np.arange(n + 1) * step
    states = np.empty((n + 1, 4))
    lam0 = S.lam(p0[0], p0[1])
    states[0] = [p0[0], p0[1], np.cos(theta0) / np.sqrt(lam0), np.sin(theta0) / np.sqrt(lam0)]

    for i in range(n):
        s, y = s_grid[i], states[i]
        try:
            k1 = _rhs(S, curvature, s, y)
            k2 = _rhs(S, curvature, s + 0.5 * step, y + 0.5 * step * k1)
            k3 = _rhs(S, curvature, s + 0.5 * step, y + 0.5 * step * k2)
            k4 = _rhs(S, curvature, s + step, y + step * k3)
        except ExprDomainError as e:
            raise DomainExitError('curve left the chart of %s: %s' % (S.name, e), s)
        new = y + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(new)):
            raise NonFiniteStateError('non-finite curve state at arclength %.6g' % s_grid[i + 1])
        if not S.contains(new[0], new[1]):
            raise DomainExitError('curve left the chart of %s' % S.name, s_grid[i + 1])
        states[i + 1] = _unit(S, new)

    k_samples = np.broadcast_to(dsl.eval_expr(profile, {'s': s_grid}), s_grid.shape).copy()
    logger.debug('Integrated curve on %s: %d steps of %.3g' % (S.name, n, step))
    return Curve(S, s_grid, states[:, :2].copy(), states[:, 2:].copy(), k_samples, step, profile)


###################################################################################
############################## CURVATURE RECOVERY #################################
###################################################################################

def curve_curvatures(S, c):
    '''
    Geodesic curvature recovered from the sample positions at the interior
    samples 1..n-2 by central differences: k = g(D gamma', j gamma')/|gamma'|^3.
    '''
    p, h = c.points, c.step
    d1 = (p[2:] - p[:-2]) / (2.0 * h)
    d2 = (p[2:] - 2.0 * p[1:-1] + p[:-2]) / h ** 2
    x, y = p[1:-1, 0], p[1:-1, 1]
    acc = d2 + S.connection(x, y, d1, d1)
    lam = S.lam(x, y)
    jd1 = np.stack([-d1[:, 1], d1[:, 0]], axis=-1)
    num = lam * np.sum(acc * jd1, axis=-1)
    speed = np.sqrt(lam * np.sum(d1 * d1, axis=-1))
    return num / speed ** 3


def curve_curvature(S, c, i):
    '''Recovered geodesic curvature at sample i, 1 <= i <= len(c)-2.'''
    if i < 1 or i > len(c) - 2:
        raise IndexError('sample index %d outside 1..%d' % (i, len(c) - 2))
    return float(curve_curvatures(S, c)[i - 1])


def reversed_start(c):
    '''End point and reversed direction angle of c, for integrating back along it.'''
    v = c.tangents[-1]
    return tuple(c.points[-1]), float(np.arctan2(-v[1], -v[0]))


def check_unit_speed(c, tol=1e-6):
    speeds = c.speeds()
    worst = float(np.max(np.abs(speeds - 1.0)))
    if worst > tol:
        raise CurveSpeedError('curve is not unit speed (deviation %.3g)' % worst)
    return worst
