'''
Validate_Config.py

Config validation methods. Each test_* method records a message and sets the
failure flag; validate() runs them all and returns the flag.

Please use /PythonCode/config_validation.py to validate config files.
'''

import logging
import numpy as np

from .. import Metric_DSL as dsl
from ..Surfaces.Surface2D import RectDomain
from .Errors import GeometryError
from .Config import IMMERSION_KINDS, GRAPH_GENERATORS, domain_from_dict

logger = logging.getLogger(__name__)


class ValidateConfig(object):

    def __init__(self, cfg):
        self.cfg = cfg
        self.failed_test = False
        self.messages = []

    def fail(self, message):
        self.messages.append(message)
        logger.warning(message)
        self.failed_test = True

    def test_eps(self):
        if self.cfg.product.eps not in (1, -1):
            self.fail('Product sign eps must be +1 or -1, got %r.' % (self.cfg.product.eps,))

    def test_names_resolve(self):
        for key in ('sigma1', 'sigma2'):
            name = getattr(self.cfg.product, key)
            if name not in self.cfg.surfaces:
                self.fail("Product %s refers to unknown surface '%s'." % (key, name))
        for c in self.cfg.curves.values():
            if c.surface not in ('sigma1', 'sigma2') and c.surface not in self.cfg.surfaces:
                self.fail("Curve %s refers to unknown surface '%s'." % (c.name, c.surface))
        for m in self.cfg.immersions.values():
            if m.kind not in IMMERSION_KINDS:
                self.fail("Immersion %s has unknown kind '%s'." % (m.name, m.kind))
            elif m.kind == 'rank-one':
                if len(m.references) != 2:
                    self.fail('Rank-one immersion %s needs exactly two curve references.' % m.name)
                for ref in m.references:
                    if ref not in self.cfg.curves:
                        self.fail("Immersion %s refers to unknown curve '%s'." % (m.name, ref))
            elif m.kind == 'graph' and m.map is None and m.generator not in GRAPH_GENERATORS:
                self.fail("Graph immersion %s needs a map or one of the generators %s." % (m.name, ', '.join(GRAPH_GENERATORS)))
            elif m.kind == 'general' and (m.phi is None or m.psi is None):
                self.fail('General immersion %s needs both phi and psi maps.' % m.name)

    def test_steps_positive(self):
        for c in self.cfg.curves.values():
            if not c.step > 0 or not c.length > 0:
                self.fail('Curve %s needs positive length and step.' % c.name)
        for m in self.cfg.immersions.values():
            if m.kind == 'rank-one':
                continue
            grid = m.grid or {}
            try:
                ok = grid['step'] > 0 and grid['s'][1] > grid['s'][0] and grid['t'][1] > grid['t'][0]
            except (KeyError, IndexError, TypeError):
                ok = False
            if not ok:
                self.fail('Immersion %s needs a grid with increasing ranges and a positive step.' % m.name)

    def test_expressions_parse(self):
        texts = [('surface %s' % s.name, s.lam) for s in self.cfg.surfaces.values() if s.lam is not None]
        texts += [('curve %s' % c.name, c.curvature_profile) for c in self.cfg.curves.values()]
        for m in self.cfg.immersions.values():
            for part in (m.map, m.phi, m.psi):
                if part is not None:
                    texts += [('immersion %s' % m.name, e) for e in part]
        for where, text in texts:
            try:
                dsl.as_expr(text)
            except GeometryError as e:
                self.fail('Expression %r of %s does not parse: %s' % (text, where, e))

    def test_lambda_positive(self):
        for s in self.cfg.surfaces.values():
            if s.lam is None:
                continue
            try:
                surface = s.build()
                x, y = _domain_sample(domain_from_dict(s.domain) if s.domain else surface.domain)
                lam = surface.lam(x, y)
            except GeometryError as e:
                self.fail('Conformal factor of surface %s cannot be evaluated: %s' % (s.name, e))
                continue
            if np.any(lam <= 0):
                self.fail('Conformal factor of surface %s is not positive on its domain.' % s.name)

    def validate(self):
        logger.info('Validating config %s' % self.cfg.name)
        self.test_eps()
        self.test_names_resolve()
        self.test_steps_positive()
        self.test_expressions_parse()
        if not self.failed_test:
            self.test_lambda_positive()
        if self.failed_test:
            logger.info('Config %s fails validation.' % self.cfg.name)
        else:
            logger.info('Config %s validated.' % self.cfg.name)
        return self.failed_test


def _domain_sample(domain, n=9):
    '''Interior sample points of a chart domain.'''
    if isinstance(domain, RectDomain):
        xs = np.linspace(domain.x0, domain.x1, n + 2)[1:-1]
        ys = np.linspace(domain.y0, domain.y1, n + 2)[1:-1]
        X, Y = np.meshgrid(xs, ys)
        return X.ravel(), Y.ravel()
    r = domain.radius * np.linspace(0.0, 0.95, n)
    theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    R, T = np.meshgrid(r, theta)
    return (domain.cx + R * np.cos(T)).ravel(), (domain.cy + R * np.sin(T)).ravel()
