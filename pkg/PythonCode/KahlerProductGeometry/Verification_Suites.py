'''
Verification_Suites.py

Named verification suites run by /PythonCode/verification_main.py.

A suite takes a GeometryConfig, a parameter dict (suite defaults, updated by
the config's "suites" section and the command-line overrides) and a logger,
and returns a SuiteResult: a list of check records

    {name, max_residual, node_of_max, tolerance, pass}

plus free-form details and optional tables for CSV export. The run passes
when every check passes.
'''
###################################################################################
from collections import OrderedDict
from dataclasses import dataclass, field
import numpy as np
import pandas as pd
from scipy import integrate, special

from .Surfaces.Surface2D import plane
from .Surfaces.Curve_Integration import integrate_prescribed_curvature, curve_curvatures
from .Kahler.KahlerProduct import random_point, random_vector, scalar_curvature
from .Kahler.Weyl_Decomposition import weyl_blocks, weyl_norms
from .Kahler.Structure_Checks import nijenhuis, reference_norm, kahler_condition, d_omega
from .Lagrangian.Immersion import build_rank_one, build_immersion, max_over_interior, Grid
from .Lagrangian.Fundamental_Forms import lagrangian_residual, induced_metric_arrays, inverse_metric, \
    cubic_form_arrays, mean_curvature_norms, rank_one_mean_curvature_residual, hamiltonian_residual, \
    projected_rank, projected_ranks, residual_record, LAGRANGIAN_TOL, METRIC_TOL
from .Lagrangian.Graph_Fixtures import constant_map
from .Lagrangian.Rank_Two_Algebra import frame_coefficients, rank_two_constraint_residual
from .Lagrangian.Maslov_Form import max_maslov_defect
from .Variation.Test_Functions import polynomial_bump, sample_function
from .Variation.Second_Variation import second_variation, curvature_bound_check
from .Variation.Stability_Probe import stability_probe
from .utils.Errors import ConfigError, EmptySampleError, RankError

@dataclass
class SuiteResult:
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c['pass'] for c in self.checks)

    def add(self, name, value, tol, node=None, passed=None, **extra):
        '''Record a residual check; passed defaults to value <= tol.'''
        value = None if value is None else float(value)
        ok = bool(value <= tol) if passed is None else bool(passed)
        record = {'name': name, 'max_residual': value, 'node_of_max': node, 'tolerance': tol, 'pass': ok}
        record.update(extra)
        self.checks.append(record)
        return record


def _seeded(params):
    return np.random.default_rng(int(params['seed']))


def _step(params):
    return params.get('grid_step')


def _sample_size(params, what):
    n = int(params['n'])
    if n < 1:
        raise EmptySampleError('%s needs at least one sample, got n=%d' % (what, n))
    return n


def _fixtures(cfg, params, kinds):
    names = params.get('fixtures')
    if names is None:
        names = [n for n in cfg.immersion_names() if cfg.immersions[n].kind in kinds]
    missing = [n for n in names if n not in cfg.immersions]
    if missing:
        raise ConfigError('unknown fixtures %s' % ', '.join(missing))
    return names


###################################################################################
############################## AMBIENT GEOMETRY ###################################
###################################################################################

def suite_scalar_curvature(cfg, params, logger):
    K, rng, result = cfg.kahler(), _seeded(params), SuiteResult()
    points = [random_point(K, rng, params['box']) for _ in range(_sample_size(params, 'scalar-curvature'))]
    errors, values = [], []
    for p in points:
        value = scalar_curvature(K, p)
        k1, k2 = K.gauss(p)
        values.append(value)
        errors.append(abs(value - 2.0 * (k1 + K.eps * k2)))
    worst = int(np.argmax(errors))
    result.add('frame scalar curvature vs 2(k1 + eps k2)', errors[worst], params['tol'], worst)
    if params.get('expected') is not None:
        dev = np.abs(np.array(values) - params['expected'])
        result.add('scalar curvature = %r' % params['expected'], dev.max(), params['tol'], int(np.argmax(dev)))
    result.details['scalar_curvature_range'] = [float(min(values)), float(max(values))]
    logger.info('Scalar curvature range on %s: %s' % (K.name, result.details['scalar_curvature_range']))
    return result


def suite_conformal_flatness(cfg, params, logger):
    K, rng, result = cfg.kahler(), _seeded(params), SuiteResult()
    points = np.array([random_point(K, rng, params['box']) for _ in range(_sample_size(params, 'conformal-flatness'))])
    norms = weyl_norms(K, points)
    worst = int(np.argmax(norms))
    if params['flat']:
        result.add('max Weyl block norm', norms[worst], params['tol'], worst)
    else:
        weakest = int(np.argmin(norms))
        result.add('min Weyl block norm above tolerance', norms[weakest], params['tol'], weakest,
                   passed=norms[weakest] > params['tol'])
    Wplus, Wminus = weyl_blocks(K, points[0])
    result.details['W_plus_diagonal'] = [float(v) for v in np.diag(Wplus)]
    result.details['W_minus_diagonal'] = [float(v) for v in np.diag(Wminus)]
    if params.get('expected_wplus_diag') is not None:
        expected = np.asarray(params['expected_wplus_diag'], dtype=float)
        dev = max(np.max(np.abs(np.diag(weyl_blocks(K, p)[0]) - expected)) for p in points)
        result.add('W+ diagonal = %s' % list(expected), dev, params['block_tol'])
    logger.info('Weyl residual on %s: %.3e, W+ diagonal %s' % (K.name, norms[worst], result.details['W_plus_diagonal']))
    return result


def _random_linear_part(rng, scale):
    return scale * rng.standard_normal((4, 4))


def suite_nijenhuis(cfg, params, logger):
    K, rng, result = cfg.kahler(), _seeded(params), SuiteResult()
    norms = []
    for _ in range(_sample_size(params, 'nijenhuis')):
        p = random_point(K, rng, params['box'])
        X, Y = random_vector(K, p, rng), random_vector(K, p, rng)
        N = nijenhuis(K, p, X, Y, _random_linear_part(rng, 0.5), _random_linear_part(rng, 0.5))
        norms.append(reference_norm(K, N))
    worst = int(np.argmax(norms))
    result.add('max |N_J|', norms[worst], params['tol'], worst)
    return result


def suite_kahler_condition(cfg, params, logger):
    K, rng, result = cfg.kahler(), _seeded(params), SuiteResult()
    nabla_J, d_Omega = [], []
    for _ in range(_sample_size(params, 'kahler-condition')):
        p = random_point(K, rng, params['box'])
        X, Y, Z = (random_vector(K, p, rng) for _ in range(3))
        nabla_J.append(abs(kahler_condition(K, X, Y, Z, _random_linear_part(rng, 0.5))))
        d_Omega.append(abs(d_omega(K, X, Y, Z)))
    result.add('max |G((nabla_X J)Y, Z)|', max(nabla_J), params['tol'], int(np.argmax(nabla_J)))
    result.add('max |dOmega(X, Y, Z)|', max(d_Omega), params['tol'], int(np.argmax(d_Omega)))
    return result


###################################################################################
################################## CURVES #########################################
###################################################################################

def fresnel_endpoint(lam, L):
    '''Endpoint of the plane curve with k = lam s from the origin along the x-axis.'''
    c = np.sqrt(np.pi / lam)
    S, C = special.fresnel(L / c)
    return c * C, c * S


def quad_endpoint(lam, L):
    x = integrate.quad(lambda u: np.cos(0.5 * lam * u * u), 0.0, L, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    y = integrate.quad(lambda u: np.sin(0.5 * lam * u * u), 0.0, L, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    return x, y


def cornu_curve(lam, L, h):
    return integrate_prescribed_curvature(plane(), (0.0, 0.0), 0.0, '%r*s' % float(lam), L, h)


def suite_cornu_spiral(cfg, params, logger):
    result = SuiteResult()
    lam, L = params['slope'], params['length']
    c = cornu_curve(lam, L, params['step'])
    end = c.points[-1]
    fx, fy = fresnel_endpoint(lam, L)
    qx, qy = quad_endpoint(lam, L)
    result.add('endpoint vs Fresnel integrals', np.hypot(end[0] - fx, end[1] - fy), params['tol'])
    result.add('endpoint vs quadrature', np.hypot(end[0] - qx, end[1] - qy), params['tol'])
    k = curve_curvatures(c.surface, c)
    s = c.s[1:-1]
    window = (s >= params['window'][0]) & (s <= params['window'][1])
    dev = np.abs(k[window] - lam * s[window])
    result.add('recovered curvature vs slope * s', dev.max(), params['curvature_tol'], int(np.argmax(dev)))
    result.details['endpoint'] = [float(end[0]), float(end[1])]
    result.details['fresnel_endpoint'] = [float(fx), float(fy)]
    result.tables['curve'] = c.to_frame()
    return result


###################################################################################
############################### LAGRANGIAN ########################################
###################################################################################

def _max_tri(imm):
    return max(max_over_interior(imm, h)[0] for h in cubic_form_arrays(imm))


def suite_rank_one_minimal(cfg, params, logger):
    K, result = cfg.kahler(), SuiteResult()
    imm = cfg.immersion(params['fixture'], _step(params))
    result.add('Lagrangian residual', lagrangian_residual(imm), params['lagrangian_tol'])
    g = induced_metric_arrays(imm)
    result.checks.append(residual_record('induced metric - diag(1, eps)', np.abs(g - np.diag([1.0, K.eps])).max(axis=(-1, -2)),
                                         imm, params['metric_tol']))
    result.add('max |h|', _max_tri(imm), params['tol'])
    result.checks.append(residual_record('max |H|', mean_curvature_norms(imm), imm, params['tol']))

    rng = _seeded(params)
    worst = 0.0
    for _ in range(_sample_size(params, 'rank-one-minimal')):
        a, b = rng.uniform(-0.5, 0.5, size=2).tolist(), rng.uniform(-0.5, 0.5, size=2).tolist()
        theta = rng.uniform(0.0, 2.0 * np.pi, size=2).tolist()
        c1 = integrate_prescribed_curvature(K.sigma1, (0.0, 0.0), theta[0],
                                            '%r*s + %r' % (a[0], b[0]), params['length'], params['step'])
        c2 = integrate_prescribed_curvature(K.sigma2, (0.0, 0.0), theta[1],
                                            '%r*s + %r' % (a[1], b[1]), params['length'], params['step'])
        worst = max(worst, rank_one_mean_curvature_residual(build_rank_one(K, c1, c2)))
    result.add('max |2H - (k_phi J Phi_s + eps k_psi J Phi_t)| over %d random fixtures' % params['n'],
               worst, params['formula_tol'])
    return result


def suite_hamiltonian_cornu(cfg, params, logger):
    K, result = cfg.kahler(), SuiteResult()
    lam, L, h = params['slope'], params['length'], params['step']

    def pair(k1, k2):
        c1 = integrate_prescribed_curvature(K.sigma1, (0.0, 0.0), 0.0, k1, L, h)
        c2 = integrate_prescribed_curvature(K.sigma2, (0.0, 0.0), 0.5, k2, L, h)
        return build_rank_one(K, c1, c2)

    balanced = hamiltonian_residual(pair('%r*s' % lam, '%r*s' % (-K.eps * lam)))
    result.add('slopes lam_phi = -eps lam_psi', balanced, params['tol'])
    unbalanced = hamiltonian_residual(pair('%r*s' % lam, '%r*s' % (K.eps * lam)))
    result.add('slopes lam_phi = eps lam_psi give 2|lam|', abs(unbalanced - 2.0 * abs(lam)), params['tol'],
               observed=unbalanced)
    circles = hamiltonian_residual(pair('0.5', '0.25'))
    result.add('circle x circle', circles, params['circle_tol'])
    return result


def suite_rank_zero(cfg, params, logger):
    K, rng, result = cfg.kahler(), _seeded(params), SuiteResult()
    grid = Grid.from_dict(params['grid'])
    residuals, ranks_ok = [], True
    for _ in range(_sample_size(params, 'rank-zero')):
        p = random_point(K, rng, params['box'])
        imm = build_immersion(K, constant_map(p[:2]), ('x', 'y'), grid)
        residuals.append(lagrangian_residual(imm))
        ranks_ok &= bool(np.all(projected_ranks(imm) == 0))
    lowest = min(residuals)
    result.add('min Lagrangian residual of constant-phi fixtures', lowest, params['threshold'],
               passed=lowest >= params['threshold'])
    result.add('projected rank 0 at every node', 0.0 if ranks_ok else 1.0, 0.0)
    return result


def _lagrangian_fixtures(cfg, params, kinds, result, logger):
    '''Lagrangian fixtures with a non-degenerate induced metric; the others are logged and skipped.'''
    out = []
    for name in _fixtures(cfg, params, kinds):
        imm = cfg.immersion(name, _step(params))
        residual = lagrangian_residual(imm)
        if residual > LAGRANGIAN_TOL:
            logger.info('Skipping non-Lagrangian fixture %s (residual %.3g)' % (name, residual))
            result.details.setdefault('skipped', []).append(name)
            continue
        _, det = inverse_metric(induced_metric_arrays(imm))
        si, ti = imm.interior()
        if np.min(np.abs(det[si, ti])) < METRIC_TOL:
            logger.info('Skipping fixture %s with a degenerate induced metric' % name)
            result.details.setdefault('skipped', []).append(name)
            continue
        out.append((name, imm))
    return out


def suite_maslov(cfg, params, logger):
    result = SuiteResult()
    for name, imm in _lagrangian_fixtures(cfg, params, ('rank-one', 'graph', 'general'), result, logger):
        value, node = max_maslov_defect(imm)
        result.add('Maslov defect on %s' % name, value, params['tol'], list(node))
    return result


def _rank_two_nodes(imm, stride):
    for node in imm.interior_nodes()[::stride]:
        if projected_rank(imm, node) == 2:
            yield node


def suite_frame_algebra(cfg, params, logger):
    result = SuiteResult()
    for name, imm in _lagrangian_fixtures(cfg, params, ('graph', 'general'), result, logger):
        worst, worst_node, count = 0.0, None, 0
        for node in _rank_two_nodes(imm, params['stride']):
            residuals = frame_coefficients(imm, node).identity_residuals()
            count += 1
            if max(residuals.values()) >= worst:
                worst, worst_node = max(residuals.values()), list(node)
        if count == 0:
            raise RankError('fixture %s has no rank-two nodes' % name)
        result.add('frame identities on %s (%d nodes)' % (name, count), worst, params['tol'], worst_node)
    return result


def suite_rank_two_obstruction(cfg, params, logger):
    result = SuiteResult()
    expected = params.get('expected')
    for name, imm in _lagrangian_fixtures(cfg, params, ('graph', 'general'), result, logger):
        values = np.array([rank_two_constraint_residual(imm, node)
                           for node in _rank_two_nodes(imm, params['stride'])])
        if values.size == 0:
            raise RankError('fixture %s has no rank-two nodes' % name)
        result.details[name] = {'min': float(values.min()), 'max': float(values.max())}
        if expected is None:
            result.add('constant obstruction on %s' % name, values.max() - values.min(), params['tol'])
        else:
            dev = np.abs(values - expected)
            result.add('obstruction = %r on %s' % (expected, name), dev.max(), params['tol'],
                       observed=float(values.mean()))
    return result


###################################################################################
################################ VARIATION ########################################
###################################################################################

def suite_stability_probe(cfg, params, logger):
    result = SuiteResult()
    imm = cfg.immersion(params['fixture'], _step(params))
    report = stability_probe(imm, params['family'], params['n'], params['seed'], params['tol'],
                             params['formula'], params['workers'])
    result.details['report'] = report.to_dict()
    result.tables['second_variation'] = report.to_frame()
    expected = params.get('expected')
    ok = report.classification == expected if expected else report.classification != 'inconclusive'
    result.add('classification %s' % report.classification, None, params['tol'], passed=ok,
               classification=report.classification, expected=expected)
    if imm.kind == 'rank-one' and curvature_bound_check(imm).passed:
        result.add('no negative value under the curvature bound', max(0.0, -report.min), params['tol'] * report.scale)
    return result


def suite_curvature_bound(cfg, params, logger):
    result = SuiteResult()
    expected = params.get('expected', {})
    for name in _fixtures(cfg, params, ('rank-one',)):
        imm = cfg.immersion(name, _step(params))
        bound = curvature_bound_check(imm)
        result.details[name] = bound.to_dict()
        if name in expected:
            result.add('curvature bound on %s' % name, bound.margin, 0.0, passed=bound.passed == expected[name],
                       bound_pass=bound.passed)
        if bound.passed:
            report = stability_probe(imm, params['family'], params['n'], params['seed'], params['tol'])
            result.add('probe under the bound on %s' % name, max(0.0, -report.min), params['tol'] * report.scale,
                       classification=report.classification)
    return result


def _observed_order(e_coarse, e_fine):
    return float(np.log2(abs(e_coarse) / abs(e_fine)))


def suite_convergence_order(cfg, params, logger):
    result = SuiteResult()
    lam, L = 1.0, 5.0
    fx, fy = fresnel_endpoint(lam, L)
    errors = []
    for h in (params['ode_step'], params['ode_step'] / 2):
        end = cornu_curve(lam, L, h).points[-1]
        errors.append(np.hypot(end[0] - fx, end[1] - fy))
    order = _observed_order(*errors)
    result.add('RK4 endpoint order', order, params['min_order'], passed=order >= params['min_order'], errors=errors)

    errors = []
    for h in (params['stencil_step'], params['stencil_step'] / 2):
        c = cornu_curve(lam, L, h)
        s = c.s[1:-1]
        window = (s >= 0.5) & (s <= 4.5)
        errors.append(float(np.max(np.abs(curve_curvatures(c.surface, c)[window] - lam * s[window]))))
    order = _observed_order(*errors)
    result.add('curvature recovery order', order, params['min_order'], passed=order >= params['min_order'], errors=errors)

    h0 = params['grid_step'] or params['quadrature_step']
    values = []
    for h in (h0, h0 / 2, h0 / 4):
        imm = cfg.immersion(params['fixture'], h)
        (s0, s1), (t0, t1) = (imm.s[0], imm.s[-1]), (imm.t[0], imm.t[-1])
        sc, sw, tc, tw = 0.5 * (s0 + s1), 0.35 * (s1 - s0), 0.5 * (t0 + t1), 0.35 * (t1 - t0)

        def u(S, T):
            return polynomial_bump((S - sc) / sw) * polynomial_bump((T - tc) / tw) * (1.0 + 0.5 * np.sin(3.0 * S))
        values.append(second_variation(imm, sample_function(imm, u)))
    order = _observed_order(values[0] - values[1], values[1] - values[2])
    result.add('second variation quadrature order', order, params['min_order'],
               passed=order >= params['min_order'], values=values)
    return result


###################################################################################
################################## REGISTRY #######################################
###################################################################################

COMMON = {'seed': 0, 'n': 100, 'box': 0.5, 'grid_step': None}

SUITES = OrderedDict([
    ('scalar-curvature', (suite_scalar_curvature, 'frame-contracted scalar curvature equals 2(k1 + eps k2)',
                          {'tol': 1e-9, 'expected': None})),
    ('conformal-flatness', (suite_conformal_flatness, 'Weyl blocks W+ and W- vanish on the sample',
                            {'n': 20, 'tol': 1e-8, 'block_tol': 1e-6, 'flat': True, 'expected_wplus_diag': None})),
    ('nijenhuis', (suite_nijenhuis, 'Nijenhuis tensor of J vanishes', {'tol': 1e-6})),
    ('kahler-condition', (suite_kahler_condition, 'J is parallel and Omega is closed', {'tol': 1e-6})),
    ('cornu-spiral', (suite_cornu_spiral, 'plane Cornu spiral against the Fresnel integrals',
                      {'slope': 1.0, 'length': 5.0, 'step': 1e-3, 'tol': 1e-6, 'curvature_tol': 1e-4,
                       'window': [0.1, 4.9]})),
    ('rank-one-minimal', (suite_rank_one_minimal, 'geodesic products are totally geodesic; rank-one mean curvature formula',
                          {'fixture': 'geodesics', 'n': 20, 'length': 1.0, 'step': 0.01, 'tol': 1e-7,
                           'lagrangian_tol': 1e-10, 'metric_tol': 1e-7, 'formula_tol': 1e-5})),
    ('hamiltonian-cornu', (suite_hamiltonian_cornu, 'Hamiltonian residual of Cornu pairs',
                           {'slope': 0.3, 'length': 1.0, 'step': 0.01, 'tol': 1e-6, 'circle_tol': 1e-8})),
    ('rank-zero', (suite_rank_zero, 'constant-phi immersions are never Lagrangian',
                   {'n': 10, 'threshold': 1e-2, 'grid': {'s': [-0.3, 0.3], 't': [-0.3, 0.3], 'step': 0.05}})),
    ('maslov', (suite_maslov, 'da = rho on every Lagrangian fixture', {'tol': 1e-4, 'fixtures': None})),
    ('rank-two-obstruction', (suite_rank_two_obstruction, 'k1(phi) - eps k2(psi) at rank-two nodes',
                              {'tol': 1e-9, 'stride': 1, 'fixtures': None, 'expected': None})),
    ('stability-probe', (suite_stability_probe, 'sign search for the second variation',
                         {'fixture': 'probe', 'family': 'bump-cosine', 'n': 200, 'tol': 1e-8,
                          'formula': 'auto', 'workers': 1, 'expected': None})),
    ('frame-algebra', (suite_frame_algebra, 'frame coefficient identities at rank-two nodes',
                       {'tol': 1e-9, 'stride': 1, 'fixtures': None})),
    ('curvature-bound', (suite_curvature_bound, 'curvature bound and its soundness under the probe',
                        {'n': 50, 'family': 'smoothed-random', 'tol': 1e-8, 'fixtures': None, 'expected': {}})),
    ('convergence-order', (suite_convergence_order, 'observed orders of the ODE, stencil and quadrature errors',
                           {'fixture': 'geodesics', 'ode_step': 0.1, 'stencil_step': 0.02,
                            'quadrature_step': 0.02, 'min_order': 1.8})),
])


def suite_names():
    return list(SUITES)


def describe_suites():
    return [(name, SUITES[name][1]) for name in SUITES]


def suite_parameters(name, cfg=None, overrides=None):
    '''Defaults, then the config's suite section, then the overrides.'''
    if name not in SUITES:
        raise ConfigError("unknown suite '%s'" % name)
    params = dict(COMMON)
    params.update(SUITES[name][2])
    if cfg is not None:
        params.update(cfg.suite_params(name))
    params.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return params


def run_suite(name, cfg, params, logger):
    function = SUITES[name][0]
    logger.info('Running suite %s on %s' % (name, cfg.name))
    result = function(cfg, params, logger)
    for check in result.checks:
        logger.info('%s: %s (%s)' % (check['name'], check['max_residual'], 'pass' if check['pass'] else 'FAIL'))
    return result


def checks_frame(checks):
    return pd.DataFrame(checks, columns=['name', 'max_residual', 'node_of_max', 'tolerance', 'pass'])
