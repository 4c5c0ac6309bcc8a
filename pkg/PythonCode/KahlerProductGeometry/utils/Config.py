'''
Config.py

JSON geometry configs. A config names the factor surfaces, the product sign,
the curves and immersions used as fixtures, and per-suite parameters:

    {
      "surfaces":   {"S2": {"model": "sphere", "curvature": 1.0},
                     "F":  {"lambda": "exp(x)", "domain": {"type": "rect", "bounds": [-1, 1, -1, 1]}}},
      "product":    {"sigma1": "S2", "sigma2": "F", "eps": 1},
      "curves":     {"c1": {"surface": "sigma1", "start": [0, 0], "angle": 0.0,
                            "curvature_profile": "0", "length": 2.0, "step": 0.01}},
      "immersions": {"geo": {"kind": "rank-one", "references": ["c1", "c2"]},
                     "g":   {"kind": "graph", "generator": "twist", "twist": 0.3,
                             "grid": {"s": [-0.5, 0.5], "t": [-0.5, 0.5], "step": 0.02}},
                     "h":   {"kind": "graph", "map": ["x", "-y"], "grid": {...}},
                     "z":   {"kind": "general", "phi": ["0.2", "0.1"], "psi": ["x", "y"], "grid": {...}}},
      "suites":     {"stability-probe": {"n": 200, "seed": 7}}
    }

Instead of sigma1/sigma2 names the product may carry inline conformal factors
"lambda1"/"lambda2" with optional "domain1"/"domain2" (default: the square
[-50, 50]^2). Bare file names resolve to the built-in Configs directory.
'''
###################################################################################
from dataclasses import dataclass, field
import json
import logging
import os

from ..Surfaces.Surface2D import Surface2D, RectDomain, DiskDomain, BUILTIN_SURFACES
from ..Surfaces.Curve_Integration import integrate_prescribed_curvature
from ..Kahler.KahlerProduct import KahlerProduct
from ..Lagrangian import Graph_Fixtures as fixtures
from ..Lagrangian.Immersion import Grid, build_rank_one, build_graph, build_immersion
from .Errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'Configs')
IMMERSION_KINDS = ('rank-one', 'graph', 'general')
GRAPH_GENERATORS = ('twist', 'inversion', 'conjugation', 'stretch')
DEFAULT_DOMAIN = {'type': 'rect', 'bounds': [-50.0, 50.0, -50.0, 50.0]}

###################################################################################
##################################### SPECS #######################################
###################################################################################

def domain_from_dict(d):
    try:
        if d['type'] == 'rect':
            x0, x1, y0, y1 = (float(v) for v in d['bounds'])
            return RectDomain(x0, x1, y0, y1)
        if d['type'] == 'disk':
            cx, cy = (float(v) for v in d['center'])
            return DiskDomain(cx, cy, float(d['radius']))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError('malformed domain %r: %s' % (d, e))
    raise ConfigError("unknown domain type %r, expected 'rect' or 'disk'" % d.get('type'))


@dataclass(frozen=True)
class SurfaceSpec:
    name: str
    model: str = None
    curvature: float = None
    lam: str = None
    domain: dict = None

    def build(self):
        if self.model is not None:
            if self.model not in BUILTIN_SURFACES:
                raise ConfigError("unknown surface model '%s'" % self.model)
            if self.model == 'plane':
                return BUILTIN_SURFACES['plane']()
            default = 1.0 if self.model == 'sphere' else -1.0
            return BUILTIN_SURFACES[self.model](default if self.curvature is None else float(self.curvature))
        return Surface2D(self.name, self.lam, domain_from_dict(self.domain or DEFAULT_DOMAIN))


@dataclass(frozen=True)
class ProductSpec:
    sigma1: str
    sigma2: str
    eps: int


@dataclass(frozen=True)
class CurveSpec:
    name: str
    surface: str
    start: tuple
    angle: float
    curvature_profile: str
    length: float
    step: float


@dataclass(frozen=True)
class ImmersionSpec:
    name: str
    kind: str
    references: tuple = ()
    map: tuple = None
    generator: str = None
    twist: float = 0.3
    phi: tuple = None
    psi: tuple = None
    grid: dict = None


@dataclass
class GeometryConfig:
    '''Parsed config plus lazily built geometric objects.'''
    name: str
    source: str
    surfaces: dict
    product: ProductSpec
    curves: dict
    immersions: dict
    suites: dict
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def surface(self, name):
        key = ('surface', name)
        if key not in self._cache:
            if name in ('sigma1', 'sigma2'):
                name = getattr(self.product, name)
            if name not in self.surfaces:
                raise ConfigError("unknown surface '%s' in %s" % (name, self.name))
            self._cache[key] = self.surfaces[name].build()
        return self._cache[key]

    def kahler(self):
        if 'product' not in self._cache:
            self._cache['product'] = KahlerProduct(self.surface('sigma1'), self.surface('sigma2'), self.product.eps)
        return self._cache['product']

    def suite_params(self, suite):
        return dict(self.suites.get(suite, {}))

    def curve(self, name, step=None):
        if name not in self.curves:
            raise ConfigError("unknown curve '%s' in %s" % (name, self.name))
        spec = self.curves[name]
        h = spec.step if step is None else step
        key = ('curve', name, h)
        if key not in self._cache:
            self._cache[key] = integrate_prescribed_curvature(
                self.surface(spec.surface), spec.start, spec.angle, spec.curvature_profile, spec.length, h)
        return self._cache[key]

    def immersion(self, name, step=None):
        '''Build a named immersion; step replaces the curve or grid step.'''
        if name not in self.immersions:
            raise ConfigError("unknown immersion '%s' in %s" % (name, self.name))
        spec = self.immersions[name]
        K = self.kahler()
        if spec.kind == 'rank-one':
            c1, c2 = (self.curve(ref, step) for ref in spec.references)
            return build_rank_one(K, c1, c2)
        grid = Grid.from_dict(spec.grid)
        if step is not None:
            grid = Grid(grid.s0, grid.s1, grid.t0, grid.t1, step)
        if spec.kind == 'graph':
            return build_graph(K, self.graph_map(spec), grid)
        return build_immersion(K, spec.phi, spec.psi, grid)

    def graph_map(self, spec):
        if spec.map is not None:
            return spec.map
        K = self.kahler()
        if spec.generator == 'twist':
            return fixtures.twist_map(K, spec.twist)
        if spec.generator == 'inversion':
            return fixtures.inversion_map(K)
        if spec.generator == 'conjugation':
            return fixtures.conjugation_map(K)
        return fixtures.stretch_map()

    def immersion_names(self, kind=None):
        return [n for n, s in self.immersions.items() if kind is None or s.kind == kind]


###################################################################################
##################################### PARSING #####################################
###################################################################################

def _require(d, key, where):
    if key not in d:
        raise ConfigError("missing key '%s' in %s" % (key, where))
    return d[key]


def _pair(value, where):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError('%s must be a pair' % where)
    return tuple(value)


def parse_config(raw, name='<dict>', source=None):
    '''Build a GeometryConfig from a decoded JSON object.'''
    if not isinstance(raw, dict):
        raise ConfigError('config %s must be a JSON object' % name)
    surfaces = {}
    for sname, s in raw.get('surfaces', {}).items():
        surfaces[sname] = SurfaceSpec(sname, s.get('model'), s.get('curvature'), s.get('lambda'), s.get('domain'))
    p = _require(raw, 'product', name)
    sigma = []
    for i in (1, 2):
        if 'lambda%d' % i in p:
            inline = 'sigma%d_inline' % i
            surfaces[inline] = SurfaceSpec(inline, lam=p['lambda%d' % i], domain=p.get('domain%d' % i))
            sigma.append(inline)
        else:
            sigma.append(_require(p, 'sigma%d' % i, 'product'))
    product = ProductSpec(sigma[0], sigma[1], _require(p, 'eps', 'product'))

    curves = {}
    for cname, c in raw.get('curves', {}).items():
        where = 'curve %s' % cname
        curves[cname] = CurveSpec(cname, _require(c, 'surface', where), _pair(_require(c, 'start', where), where + ' start'),
                                  float(c.get('angle', 0.0)), str(_require(c, 'curvature_profile', where)),
                                  float(_require(c, 'length', where)), float(c.get('step', 1e-2)))

    immersions = {}
    for iname, m in raw.get('immersions', {}).items():
        where = 'immersion %s' % iname
        kind = _require(m, 'kind', where)
        immersions[iname] = ImmersionSpec(
            iname, kind, tuple(m.get('references', ())),
            _pair(m['map'], where + ' map') if 'map' in m else None, m.get('generator'),
            float(m.get('twist', 0.3)),
            _pair(m['phi'], where + ' phi') if 'phi' in m else None,
            _pair(m['psi'], where + ' psi') if 'psi' in m else None, m.get('grid'))

    suites = raw.get('suites', {})
    if not isinstance(suites, dict):
        raise ConfigError('suites must map suite names to parameter objects')
    return GeometryConfig(name, source, surfaces, product, curves, immersions, suites)


def resolve_config_path(path):
    if os.path.isfile(path):
        return path
    if os.path.basename(path) == path:
        name = path if os.path.splitext(path)[1] else path + '.json'
        builtin = os.path.join(CONFIG_DIR, name)
        if os.path.isfile(builtin):
            return builtin
    raise ConfigError('config file not found: %s' % path)


def load_config(path):
    '''Read and parse a JSON config; bare names fall back to the built-in configs.'''
    resolved = resolve_config_path(path)
    try:
        with open(resolved, 'r') as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError('config %s is not valid JSON: %s' % (path, e))
    except OSError as e:
        raise ConfigError('cannot read config %s: %s' % (path, e))
    name = os.path.splitext(os.path.basename(resolved))[0]
    logger.debug('Loaded config %s from %s' % (name, resolved))
    return parse_config(raw, name, resolved)


def builtin_configs():
    return sorted(os.path.splitext(f)[0] for f in os.listdir(CONFIG_DIR) if f.endswith('.json'))
