'''
Immersion.py

Discretized surfaces (s, t) -> (phi(s,t), psi(s,t)) in a product Sigma1 x Sigma2.

An Immersion stores, on a rectangular (s, t) lattice, the product point Phi
and the chart derivatives Phi_s, Phi_t, Phi_ss, Phi_st, Phi_tt as arrays of
shape (ns, nt, 4).

Derivatives come from one of two sources:
    - stencils: five-point central differences (fourth order) at interior
      nodes, five-point one-sided formulas on the two nodes next to each edge.
      Residual reductions skip `margin` = 2 nodes on every side.
    - exact: maps given as pairs of expressions in (x, y) are differentiated
      symbolically; margin = 0.

Builders:
    build_rank_one(K, c1, c2)         separable (phi(s), psi(t)) from two unit-speed curves
    build_graph(K, f, grid)           ((s, t), f(s, t))
    build_immersion(K, phi, psi, grid) general maps
'''
###################################################################################
from dataclasses import dataclass
import logging
import numpy as np
import pandas as pd

from .. import Metric_DSL as dsl
from ..Surfaces.Curve_Integration import check_unit_speed
from ..utils.Dtypes import dtypes_immersion
from ..utils.Errors import GeometryError

logger = logging.getLogger(__name__)

STENCIL_MARGIN = 2
IMMERSION_COLUMNS = list(dtypes_immersion)

###################################################################################
################################### STENCILS ######################################
###################################################################################

_D1_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2_CENTRAL = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
# one-sided rows for the first two nodes; the last two nodes use the mirror image
_D1_EDGE = (np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0,
            np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0)
_D2_EDGE = (np.array([35.0, -104.0, 114.0, -56.0, 11.0]) / 12.0,
            np.array([11.0, -20.0, 6.0, 4.0, -1.0]) / 12.0)


def _apply(F, h, axis, central, edge, order):
    F = np.moveaxis(np.asarray(F, dtype=float), axis, 0)
    n = F.shape[0]
    if n < 5:
        raise GeometryError('derivative stencils need at least 5 nodes along an axis, got %d' % n)
    out = np.empty_like(F)
    out[2:-2] = sum(c * F[k:n - 4 + k] for k, c in enumerate(central))
    parity = -1.0 if order == 1 else 1.0
    for i, row in enumerate(edge):
        out[i] = sum(c * F[k] for k, c in enumerate(row))
        out[n - 1 - i] = parity * sum(c * F[n - 1 - k] for k, c in enumerate(row))
    return np.moveaxis(out / h ** order, 0, axis)


def first_derivative(F, h, axis):
    return _apply(F, h, axis, _D1_CENTRAL, _D1_EDGE, 1)


def second_derivative(F, h, axis):
    return _apply(F, h, axis, _D2_CENTRAL, _D2_EDGE, 2)


###################################################################################
#################################### GRIDS ########################################
###################################################################################

@dataclass(frozen=True)
class Grid:
    s0: float
    s1: float
    t0: float
    t1: float
    step: float

    def axes(self):
        ns = int(round((self.s1 - self.s0) / self.step)) + 1
        nt = int(round((self.t1 - self.t0) / self.step)) + 1
        return np.linspace(self.s0, self.s1, ns), np.linspace(self.t0, self.t1, nt)

    @classmethod
    def from_dict(cls, d):
        return cls(d['s'][0], d['s'][1], d['t'][0], d['t'][1], d['step'])


###################################################################################
################################### IMMERSION #####################################
###################################################################################

class Immersion(object):
    '''
    Grid immersion into K. Arrays Phi, Phi_s, Phi_t, Phi_ss, Phi_st, Phi_tt
    have shape (ns, nt, 4); nodes are index pairs (i, j).
    '''

    def __init__(self, K, s, t, Phi, Phi_s, Phi_t, Phi_ss, Phi_st, Phi_tt, kind,
                 margin=STENCIL_MARGIN, curves=None, maps=None):
        self.product = K
        self.s, self.t = np.asarray(s, dtype=float), np.asarray(t, dtype=float)
        self.h_s = float(self.s[1] - self.s[0])
        self.h_t = float(self.t[1] - self.t[0])
        self.Phi, self.Phi_s, self.Phi_t = Phi, Phi_s, Phi_t
        self.Phi_ss, self.Phi_st, self.Phi_tt = Phi_ss, Phi_st, Phi_tt
        self.kind = kind
        self.margin = int(margin)
        self.curves = curves
        self.maps = maps
        K.check_domain(Phi)

    def __repr__(self):
        return 'Immersion(%s, %dx%d, kind=%s)' % (self.product.name, len(self.s), len(self.t), self.kind)

    @property
    def shape(self):
        return (len(self.s), len(self.t))

    def interior(self, extra=0):
        '''Index slices of the nodes kept by residual reductions.'''
        m = self.margin + extra
        ns, nt = self.shape
        if ns <= 2 * m or nt <= 2 * m:
            raise GeometryError('grid %dx%d has no interior nodes for margin %d' % (ns, nt, m))
        return (slice(m, ns - m), slice(m, nt - m))

    def interior_nodes(self, extra=0):
        si, ti = self.interior(extra)
        return [(i, j) for i in range(si.start, si.stop) for j in range(ti.start, ti.stop)]

    def check_node(self, node, extra=0):
        si, ti = self.interior(extra)
        i, j = node
        if not (si.start <= i < si.stop and ti.start <= j < ti.stop):
            raise IndexError('node %s is not an interior node' % (node,))

    def point(self, node):
        return self.Phi[node]

    def rank_one_curvatures(self):
        '''Sampled curve curvatures (k_phi(s), k_psi(t)) of a rank-one immersion.'''
        c1, c2 = self.curves
        return c1.k, c2.k

    def to_frame(self):
        S, T = np.meshgrid(self.s, self.t, indexing='ij')
        flat = self.Phi.reshape(-1, 4)
        return pd.DataFrame({'s': S.ravel(), 't': T.ravel(), 'x1': flat[:, 0], 'y1': flat[:, 1],
                             'x2': flat[:, 2], 'y2': flat[:, 3]}, columns=IMMERSION_COLUMNS).astype(dtypes_immersion)

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format='%.17g')


def max_over_interior(imm, values, extra=0):
    '''
    Max of |values| over the interior nodes.

    Output:
        (max, node) with node the (i, j) index of the maximum.
    '''
    si, ti = imm.interior(extra)
    block = np.abs(np.asarray(values)[si, ti])
    flat = int(np.argmax(block))
    i, j = np.unravel_index(flat, block.shape)
    return float(block[i, j]), (int(i + si.start), int(j + ti.start))


###################################################################################
################################### BUILDERS ######################################
###################################################################################

def build_rank_one(K, c1, c2, speed_tol=1e-6):
    '''
    Separable immersion (s, t) -> (phi(s), psi(t)) from unit-speed curves c1 on
    Sigma1 and c2 on Sigma2. Derivatives by stencils along each curve.
    '''
    check_unit_speed(c1, speed_tol)
    check_unit_speed(c2, speed_tol)
    ns, nt = len(c1), len(c2)
    p1, p2 = c1.points, c2.points
    d1, d2 = first_derivative(p1, c1.step, 0), first_derivative(p2, c2.step, 0)
    dd1, dd2 = second_derivative(p1, c1.step, 0), second_derivative(p2, c2.step, 0)

    def assemble(a, b):
        out = np.zeros((ns, nt, 4))
        if a is not None:
            out[:, :, :2] = a[:, None, :]
        if b is not None:
            out[:, :, 2:] = b[None, :, :]
        return out

    imm = Immersion(K, c1.s, c2.s, assemble(p1, p2), assemble(d1, None), assemble(None, d2),
                    assemble(dd1, None), assemble(None, None), assemble(None, dd2),
                    kind='rank-one', curves=(c1, c2))
    logger.debug('Built rank-one immersion %s' % imm)
    return imm


def _map_exprs(f):
    exprs = [dsl.as_expr(e) for e in f]
    if len(exprs) != 2:
        raise GeometryError('a chart map needs two component expressions')
    for e in exprs:
        if e.variables() - {'x', 'y'}:
            raise GeometryError('chart map components may only depend on x and y')
    return exprs


def _exact_parts(exprs, S, T):
    '''Values and exact first and second derivatives of a pair of expressions.'''
    env = {'x': S, 'y': T}

    def ev(e):
        return np.broadcast_to(dsl.eval_expr(e, env), S.shape)

    out = {key: np.empty(S.shape + (2,)) for key in ('f', 's', 't', 'ss', 'st', 'tt')}
    for c, e in enumerate(exprs):
        ex, ey = dsl.differentiate(e, 'x'), dsl.differentiate(e, 'y')
        out['f'][..., c] = ev(e)
        out['s'][..., c] = ev(ex)
        out['t'][..., c] = ev(ey)
        out['ss'][..., c] = ev(dsl.differentiate(ex, 'x'))
        out['st'][..., c] = ev(dsl.differentiate(ex, 'y'))
        out['tt'][..., c] = ev(dsl.differentiate(ey, 'y'))
    return out


def _stencil_parts(f, S, T, h_s, h_t):
    X, Y = f(S, T)
    F = np.stack([np.broadcast_to(X, S.shape), np.broadcast_to(Y, S.shape)], axis=-1).astype(float)
    F_s, F_t = first_derivative(F, h_s, 0), first_derivative(F, h_t, 1)
    return {'f': F, 's': F_s, 't': F_t, 'ss': second_derivative(F, h_s, 0),
            'st': first_derivative(F_t, h_s, 0), 'tt': second_derivative(F, h_t, 1)}


def _parts(f, S, T, h_s, h_t):
    if callable(f):
        return _stencil_parts(f, S, T, h_s, h_t), STENCIL_MARGIN
    return _exact_parts(_map_exprs(f), S, T), 0


def _identity_parts(S, T):
    zero, one = np.zeros(S.shape), np.ones(S.shape)
    return {'f': np.stack([S, T], axis=-1), 's': np.stack([one, zero], axis=-1),
            't': np.stack([zero, one], axis=-1), 'ss': np.zeros(S.shape + (2,)),
            'st': np.zeros(S.shape + (2,)), 'tt': np.zeros(S.shape + (2,))}


def _from_parts(K, s, t, phi, psi, kind, margin, maps):
    def join(key):
        return np.concatenate([phi[key], psi[key]], axis=-1)
    return Immersion(K, s, t, join('f'), join('s'), join('t'), join('ss'), join('st'), join('tt'),
                     kind=kind, margin=margin, maps=maps)


def build_graph(K, f, grid):
    '''
    Graph immersion (s, t) -> ((s, t), f(s, t)).

    Params:
        K:    KahlerProduct.
        f:    pair of expressions in (x, y) (strings or Expr), differentiated
              exactly, or a callable f(x, y) -> (X, Y) on arrays, differentiated
              with stencils.
        grid: Grid or dict {'s': [s0, s1], 't': [t0, t1], 'step': h}.
    '''
    grid = grid if isinstance(grid, Grid) else Grid.from_dict(grid)
    s, t = grid.axes()
    S, T = np.meshgrid(s, t, indexing='ij')
    psi, margin = _parts(f, S, T, grid.step, grid.step)
    return _from_parts(K, s, t, _identity_parts(S, T), psi, 'graph', margin, (None, f))


def build_immersion(K, phi_map, psi_map, grid):
    '''General immersion (s, t) -> (phi(s, t), psi(s, t)); maps as in build_graph.'''
    grid = grid if isinstance(grid, Grid) else Grid.from_dict(grid)
    s, t = grid.axes()
    S, T = np.meshgrid(s, t, indexing='ij')
    phi, m1 = _parts(phi_map, S, T, grid.step, grid.step)
    psi, m2 = _parts(psi_map, S, T, grid.step, grid.step)
    return _from_parts(K, s, t, phi, psi, 'general', max(m1, m2), (phi_map, psi_map))
