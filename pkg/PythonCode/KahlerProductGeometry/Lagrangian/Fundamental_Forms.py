'''
Fundamental_Forms.py

Induced metric, Lagrangian test, cubic form and mean curvature of a grid
Immersion, vectorized over the lattice:

    g_ij    = G(Phi_i, Phi_j)
    h_ijk   = Omega(Phi_i, nabla_j Phi_k),   nabla_j Phi_k = Phi_jk + Gamma(Phi_j, Phi_k)
    2H      = alpha J Phi_s + beta J Phi_t,  Gram [alpha, beta] = c,  c_i = g^jk h_ijk

On a Lagrangian immersion h is totally symmetric and is stored as the four
components h_sss, h_sst, h_stt, h_ttt. For a rank-one immersion
alpha = k_phi and beta = eps k_psi.
'''
###################################################################################
from dataclasses import dataclass
import logging
import numpy as np

from ..Kahler.KahlerProduct import J, ProductVec
from ..utils.Errors import DegenerateMetricError, ImmersionKindError, NonLagrangianError
from .Immersion import max_over_interior

logger = logging.getLogger(__name__)

LAGRANGIAN_TOL = 1e-6
METRIC_TOL = 1e-12
RANK_REL_TOL = 1e-8
RANK_FLOOR = 1e-12

###################################################################################
##################################### RANK ########################################
###################################################################################

def _jacobian_rank(M):
    sv = np.linalg.svd(M, compute_uv=False)
    threshold = max(RANK_REL_TOL * sv[0], RANK_FLOOR)
    return int(np.sum(sv > threshold))


def factor_ranks(imm, node):
    '''(rank d phi, rank d psi) at a node.'''
    A = np.stack([imm.Phi_s[node], imm.Phi_t[node]], axis=-1)
    return _jacobian_rank(A[:2]), _jacobian_rank(A[2:])


def projected_rank(imm, node):
    '''
    Rank class of the factor projections at a node: 0 if either factor map has
    rank 0, 1 if either has rank 1, otherwise 2.
    '''
    return min(factor_ranks(imm, node))


def projected_ranks(imm):
    '''Rank class at every interior node as an int array.'''
    si, ti = imm.interior()
    out = np.zeros(imm.shape, dtype=int)
    for i in range(si.start, si.stop):
        for j in range(ti.start, ti.stop):
            out[i, j] = projected_rank(imm, (i, j))
    return out[si, ti]


###################################################################################
################################ METRIC AND OMEGA #################################
###################################################################################

def omega_field(imm):
    '''Omega(Phi_s, Phi_t) at every node.'''
    return imm.product.omega_array(imm.Phi, imm.Phi_s, imm.Phi_t)


def lagrangian_residual(imm):
    '''max |Omega(Phi_s, Phi_t)| over the interior nodes.'''
    value, node = max_over_interior(imm, omega_field(imm))
    logger.debug('Lagrangian residual %.3e at node %s' % (value, node))
    return value


def check_lagrangian(imm, node, tol=LAGRANGIAN_TOL):
    value = abs(float(imm.product.omega_array(imm.Phi[node], imm.Phi_s[node], imm.Phi_t[node])))
    if value > tol:
        raise NonLagrangianError('immersion is not Lagrangian at node %s (|Omega| = %.3g)' % (node, value))


def induced_metric_arrays(imm):
    '''Induced Gram matrices as an (ns, nt, 2, 2) array.'''
    K, P = imm.product, imm.Phi
    g_ss = K.metric_array(P, imm.Phi_s, imm.Phi_s)
    g_st = K.metric_array(P, imm.Phi_s, imm.Phi_t)
    g_tt = K.metric_array(P, imm.Phi_t, imm.Phi_t)
    return np.stack([np.stack([g_ss, g_st], axis=-1), np.stack([g_st, g_tt], axis=-1)], axis=-2)


def induced_metric(imm, node):
    '''
    Induced metric at a node.

    Output:
        (2x2 Gram matrix, degenerate flag); the flag is set when |det| < 1e-12.
    '''
    g = induced_metric_arrays(imm)[node]
    return g, bool(abs(np.linalg.det(g)) < METRIC_TOL)


###################################################################################
################################ CUBIC FORM #######################################
###################################################################################

@dataclass(frozen=True)
class TriTensor:
    '''Totally symmetric cubic form on the (s, t) basis.'''
    sss: float
    sst: float
    stt: float
    ttt: float

    def component(self, i, j, k):
        '''Component for indices in {0: s, 1: t}.'''
        return (self.sss, self.sst, self.stt, self.ttt)[i + j + k]

    def max_abs(self):
        return max(abs(self.sss), abs(self.sst), abs(self.stt), abs(self.ttt))


def cubic_form_arrays(imm):
    '''h_sss, h_sst, h_stt, h_ttt at every node.'''
    K, P = imm.product, imm.Phi
    Ps, Pt = imm.Phi_s, imm.Phi_t
    nabla_ss = imm.Phi_ss + K.connection(P, Ps, Ps)
    nabla_st = imm.Phi_st + K.connection(P, Ps, Pt)
    nabla_tt = imm.Phi_tt + K.connection(P, Pt, Pt)
    return (K.omega_array(P, Ps, nabla_ss), K.omega_array(P, Ps, nabla_st),
            K.omega_array(P, Ps, nabla_tt), K.omega_array(P, Pt, nabla_tt))


def second_fundamental(imm, node, tol=LAGRANGIAN_TOL):
    '''Cubic form h at a node; raises NonLagrangianError off the Lagrangian locus.'''
    check_lagrangian(imm, node, tol)
    return TriTensor(*(float(h[node]) for h in cubic_form_arrays(imm)))


###################################################################################
################################ MEAN CURVATURE ###################################
###################################################################################

def inverse_metric(g):
    det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] ** 2
    with np.errstate(divide='ignore', invalid='ignore'):
        inv = np.stack([np.stack([g[..., 1, 1], -g[..., 0, 1]], axis=-1),
                        np.stack([-g[..., 0, 1], g[..., 0, 0]], axis=-1)], axis=-2) / det[..., None, None]
    return inv, det


def mean_curvature_coefficients(imm):
    '''
    alpha, beta with 2H = alpha J Phi_s + beta J Phi_t at every node.
    Nodes with a degenerate induced metric get NaN.
    '''
    g = induced_metric_arrays(imm)
    ginv, det = inverse_metric(g)
    h_sss, h_sst, h_stt, h_ttt = cubic_form_arrays(imm)
    trace_s = ginv[..., 0, 0] * h_sss + 2.0 * ginv[..., 0, 1] * h_sst + ginv[..., 1, 1] * h_stt
    trace_t = ginv[..., 0, 0] * h_sst + 2.0 * ginv[..., 0, 1] * h_stt + ginv[..., 1, 1] * h_ttt
    alpha = ginv[..., 0, 0] * trace_s + ginv[..., 0, 1] * trace_t
    beta = ginv[..., 0, 1] * trace_s + ginv[..., 1, 1] * trace_t
    bad = np.abs(det) < METRIC_TOL
    return np.where(bad, np.nan, alpha), np.where(bad, np.nan, beta)


def mean_curvature_field(imm):
    '''2H as an (ns, nt, 4) array.'''
    alpha, beta = mean_curvature_coefficients(imm)
    return alpha[..., None] * J(imm.Phi_s) + beta[..., None] * J(imm.Phi_t)


def mean_curvature(imm, node, tol=LAGRANGIAN_TOL):
    '''Mean curvature vector H at a node as a ProductVec.'''
    check_lagrangian(imm, node, tol)
    g, degenerate = induced_metric(imm, node)
    if degenerate:
        raise DegenerateMetricError('induced metric is degenerate at node %s' % (node,))
    alpha, beta = mean_curvature_coefficients(imm)
    H = 0.5 * (alpha[node] * J(imm.Phi_s[node]) + beta[node] * J(imm.Phi_t[node]))
    return ProductVec(imm.Phi[node].copy(), H)


def mean_curvature_norms(imm):
    '''|H| in the reference metric g1 + g2 at every node.'''
    H = 0.5 * mean_curvature_field(imm)
    return np.sqrt(imm.product.reference_array(imm.Phi, H, H))


def rank_one_mean_curvature_residual(imm):
    '''max |2H - (k_phi J Phi_s + eps k_psi J Phi_t)| over the interior, reference norm.'''
    if imm.kind != 'rank-one':
        raise ImmersionKindError('expected a rank-one immersion, got %s' % imm.kind)
    k_phi, k_psi = imm.rank_one_curvatures()
    expected = (k_phi[:, None, None] * J(imm.Phi_s)
                + imm.product.eps * k_psi[None, :, None] * J(imm.Phi_t))
    D = mean_curvature_field(imm) - expected
    return max_over_interior(imm, np.sqrt(imm.product.reference_array(imm.Phi, D, D)))[0]


def hamiltonian_residual(imm):
    '''
    max |k_phi'(s) + eps k_psi'(t)| over the interior of a rank-one immersion,
    derivatives by central differences of the sampled curvatures. Zero means
    the mean curvature vector field is Hamiltonian.
    '''
    if imm.kind != 'rank-one':
        raise ImmersionKindError('hamiltonian residual needs a rank-one immersion, got %s' % imm.kind)
    k_phi, k_psi = imm.rank_one_curvatures()
    dk_phi = np.gradient(k_phi, imm.h_s)
    dk_psi = np.gradient(k_psi, imm.h_t)
    values = dk_phi[:, None] + imm.product.eps * dk_psi[None, :]
    return max_over_interior(imm, values)[0]


###################################################################################
################################ RESIDUAL RECORDS #################################
###################################################################################

def residual_record(name, values, imm, tolerance, extra=0):
    '''{name, max_residual, node_of_max, tolerance, pass} over the interior nodes.'''
    value, node = max_over_interior(imm, values, extra)
    return {'name': name, 'max_residual': value, 'node_of_max': list(node),
            'tolerance': tolerance, 'pass': bool(value <= tolerance)}
