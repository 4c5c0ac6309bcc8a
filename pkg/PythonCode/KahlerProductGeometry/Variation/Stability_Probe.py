'''
Stability_Probe.py

Search for sign certificates of the second variation over a seeded family of
test functions.

Classification with scale = max |value| and tol = 1e-8:
    inconclusive   scale == 0
    indefinite     min < -tol scale and max > tol scale
    nonnegative    min >= -tol scale
    nonpositive    otherwise

The report keeps the test functions reaching the max (u_plus, when positive)
and the min (u_minus, when negative) so that an indefinite verdict can be
replayed. Evaluations are independent; with num_workers > 1 they are spread
over a multiprocessing Pool and reassembled in index order.
'''
###################################################################################
from dataclasses import dataclass, field
import logging
import multiprocessing
import numpy as np
import pandas as pd

from ..utils.Dtypes import dtypes_variation
from ..utils.Errors import EmptySampleError
from .Second_Variation import second_variation
from .Test_Functions import make_family

logger = logging.getLogger(__name__)

PROBE_TOL = 1e-8
VALUE_COLUMNS = list(dtypes_variation)

@dataclass(frozen=True, eq=False)
class SecondVariationReport:
    values: np.ndarray
    classification: str
    step: tuple
    family: str
    seed: int
    tol: float = PROBE_TOL
    test_functions: list = field(default_factory=list, repr=False)

    @property
    def count(self):
        return len(self.values)

    @property
    def min(self):
        return float(np.min(self.values))

    @property
    def max(self):
        return float(np.max(self.values))

    @property
    def scale(self):
        return float(np.max(np.abs(self.values)))

    @property
    def u_plus(self):
        if self.max <= self.tol * self.scale:
            return None
        return self.test_functions[int(np.argmax(self.values))]

    @property
    def u_minus(self):
        if self.min >= -self.tol * self.scale:
            return None
        return self.test_functions[int(np.argmin(self.values))]

    def to_dict(self):
        def certificate(u):
            if u is None:
                return None
            return {'index': u.index, 'family': u.family, 'value': float(self.values[u.index])}
        return {'family': self.family, 'seed': self.seed, 'count': self.count, 'min': self.min,
                'max': self.max, 'scale': self.scale, 'tol': self.tol,
                'classification': self.classification, 'step': list(self.step),
                'u_plus': certificate(self.u_plus), 'u_minus': certificate(self.u_minus)}

    def to_frame(self):
        return pd.DataFrame({'test_function_id': np.arange(self.count),
                             'family': [u.family for u in self.test_functions] or [self.family] * self.count,
                             'value': self.values}, columns=VALUE_COLUMNS).astype(dtypes_variation)

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format='%.17g')


def classify(values, tol=PROBE_TOL):
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return 'inconclusive'
    lo, hi = float(values.min()), float(values.max())
    if lo < -tol * scale and hi > tol * scale:
        return 'indefinite'
    if lo >= -tol * scale:
        return 'nonnegative'
    return 'nonpositive'


###################################################################################
################################ WORKER POOL ######################################
###################################################################################

_worker_state = {}

def _init_worker(imm, formula):
    _worker_state['imm'] = imm
    _worker_state['formula'] = formula


def _evaluate_wrapper(u):
    return second_variation(_worker_state['imm'], u, _worker_state['formula'])


def evaluate_all(imm, test_functions, formula='auto', num_workers=1):
    '''d2V of every test function, in input order.'''
    if num_workers <= 1:
        return np.array([second_variation(imm, u, formula) for u in test_functions])
    with multiprocessing.Pool(num_workers, initializer=_init_worker, initargs=(imm, formula)) as pool:
        return np.array(pool.map(_evaluate_wrapper, test_functions))


def stability_probe(imm, family, n, seed, tol=PROBE_TOL, formula='auto', num_workers=1):
    '''
    Evaluate d2V on n seeded test functions of a family and classify the signs.

    Params:
        imm:         Lagrangian Immersion.
        family:      'separable-bump', 'bump-cosine' or 'smoothed-random'.
        n:           int >= 1.
        seed:        int.
        tol:         relative sign tolerance.
        formula:     'auto', 'rank-one' or 'general'.
        num_workers: processes used for the evaluations.

    Output:
        SecondVariationReport.
    '''
    if n == 0:
        raise EmptySampleError('stability probe needs at least one test function')
    test_functions = make_family(imm, family, n, seed)
    values = evaluate_all(imm, test_functions, formula, num_workers)
    report = SecondVariationReport(values, classify(values, tol), (imm.h_s, imm.h_t), family, seed,
                                   tol, test_functions)
    logger.info('Stability probe on %s: %d %s functions, min %.6g, max %.6g -> %s'
                % (imm.product.name, n, family, report.min, report.max, report.classification))
    return report
