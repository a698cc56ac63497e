'''
diagwalk/checks.py - invariant suite run by `diagwalk check`

Copyright (C) 2026 diagwalk authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
'''

import collections
import itertools
import logging

from diagwalk import oracles, quadrature_green, series_green
from diagwalk.errors import UnsupportedDomain
from diagwalk.walk_model import DomainSpec, diagonal_neighbors, parity_compatible

logger = logging.getLogger('diagwalk.checks')

CheckResult = collections.namedtuple(
        'CheckResult', ['name', 'domain', 'passed', 'worst', 'tolerance'])

RESIDUAL_TOL = 1e-9
RECIPROCITY_TOL = 1e-10
PARITY_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-12
ABSORPTION_TOL = 1e-10
ORACLE_TOL = 1e-10
ORACLE_MAX_STATES = 500
QUADRATURE_RESIDUAL_TOL = 1e-6
LATTICE_RESIDUAL_TOL = 1e-5

# a handful of sources is enough to exercise every term of the sums
MAX_SOURCES = 12

def builtin_domains():
    return [
        DomainSpec.rectangle(2, 2), DomainSpec.rectangle(3, 5),
        DomainSpec.rectangle(5, 4), DomainSpec.block(2, 2, 2),
        DomainSpec.block(3, 2, 3), DomainSpec.semi_strip(3),
        DomainSpec.strip(2), DomainSpec.strip(4),
        DomainSpec.half_plane(), DomainSpec.full_lattice(3)]

def _result(name, dom, worst, tolerance):
    result = CheckResult(name, str(dom), worst <= tolerance, worst, tolerance)
    log = logger.info if result.passed else logger.warning
    log('%s on %s: worst %.3g (tolerance %.3g)', name, dom, worst, tolerance)
    return result

def _window(dom):
    '''Interior points a check looks at, in lexicographic order.'''
    if dom.finite:
        return list(dom.interior_points())
    m = dom.sizes[0]
    if dom.kind == DomainSpec.SEMISTRIP:
        return list(itertools.product(range(1, m + 1), range(1, 7)))
    return list(itertools.product(range(1, m + 1), range(-3, 4)))

def _sources(dom, window):
    if dom.kind == DomainSpec.STRIP:
        window = [x for x in window if x[1] == 0]
    elif dom.kind == DomainSpec.SEMISTRIP:
        window = [x for x in window if x[1] <= 3]
    stride = max(1, len(window) // MAX_SOURCES)
    return window[::stride]

class _GreenTable(object):
    '''Memoized series values F_src(tgt).'''
    def __init__(self, dom):
        self.dom = dom
        self.values = {}

    def __call__(self, src, tgt):
        key = (src, tgt)
        if key not in self.values:
            self.values[key] = series_green.green(self.dom, src, tgt)
        return self.values[key]

def check_residual(dom, table=None):
    '''
    Worst violation of F(x) - 2**-d sum of F over the diagonal neighbors of x
    = [x == src], with F taken as 0 on the boundary.
    '''
    table = table or _GreenTable(dom)
    window = _window(dom)
    share = 0.5 ** dom.dim
    worst = 0.0
    for src in _sources(dom, window):
        for x in window:
            spread = sum(
                    table(src, y) if dom.is_interior(y) else 0.0
                    for y in diagonal_neighbors(x))
            residual = table(src, x) - share * spread - (1.0 if x == src else 0.0)
            worst = max(worst, abs(residual))
    return _result('residual', dom, worst, RESIDUAL_TOL)

def check_reciprocity(dom, table=None):
    table = table or _GreenTable(dom)
    window = _window(dom)
    worst = 0.0
    for src in _sources(dom, window):
        for tgt in window:
            worst = max(worst, abs(table(src, tgt) - table(tgt, src)))
    return _result('reciprocity', dom, worst, RECIPROCITY_TOL)

def check_parity_zeros(dom):
    '''
    Off-parity entries of the directly solved chain vanish, and so do the
    series values.
    '''
    window = _window(dom)
    worst = 0.0
    for src in _sources(dom, window):
        row = (oracles.fundamental_matrix_green(dom, src)
               if dom.finite else None)
        for tgt in window:
            if parity_compatible(tgt, src):
                continue
            worst = max(worst, abs(series_green.green(dom, src, tgt)))
            if row is not None:
                worst = max(worst, abs(row[tgt]))
    return _result('parity zeros', dom, worst, PARITY_TOL)

def check_mc_parity(dom, trials=2000, seed=0):
    '''Walks never stand on an off-parity point, so the count is exactly 0.'''
    src = _sources(dom, _window(dom))[0]
    off = [x for x in _window(dom) if not parity_compatible(x, src)]
    if not off:
        return _result('monte carlo parity', dom, 0.0, 0.0)
    cfg = oracles.McConfig(trials, seed=seed, max_steps=10000)
    estimate = oracles.mc_expected_departures(dom, src, off[0], cfg)
    return _result('monte carlo parity', dom, abs(estimate.mean), 0.0)

def check_orthogonality(m):
    worst = max(
            abs(series_green.orthogonality_sum(a, p, m) - (a == p))
            for a in range(1, m + 1) for p in range(1, m + 1))
    return _result('orthogonality', 'width %s' % m, worst, ORTHOGONALITY_TOL)

def check_absorption(dom):
    worst = 0.0
    for src in _sources(dom, _window(dom)):
        worst = max(worst, abs(series_green.absorption_probs(dom, src).total() - 1.0))
    return _result('absorption sums to 1', dom, worst, ABSORPTION_TOL)

def check_oracle(dom, table=None):
    table = table or _GreenTable(dom)
    worst = 0.0
    for src in _sources(dom, _window(dom)):
        row = oracles.fundamental_matrix_green(dom, src)
        for tgt, value in row.items():
            worst = max(worst, abs(table(src, tgt) - value))
    return _result('oracle agreement', dom, worst, ORACLE_TOL)

def check_halfplane_residual(spec=None, a=3):
    '''
    4F(p, 0) - F(p+1, 1) - F(p+1, -1) - F(p-1, 1) - F(p-1, -1) = 4 [p == a],
    at p = a and at p = a + 2.
    '''
    def F(p, s):
        return quadrature_green.halfplane_green(a, p, s, spec).value
    worst = 0.0
    for p in (a, a + 2):
        combination = (4 * F(p, 0) - F(p + 1, 1) - F(p + 1, -1)
                       - F(p - 1, 1) - F(p - 1, -1))
        worst = max(worst, abs(combination - (4.0 if p == a else 0.0)))
    return _result('half-plane residual', DomainSpec.half_plane(), worst,
                   QUADRATURE_RESIDUAL_TOL)

def check_lattice_residual(spec=None):
    '''
    8F(0) - sum of F over the 8 neighbors of the origin = 8 in three
    dimensions. The neighbors share one integrand, so F(1, 1, 1) stands for
    all of them.
    '''
    origin = quadrature_green.lattice_green_nd((0, 0, 0), spec).value
    corner = quadrature_green.lattice_green_nd((1, 1, 1), spec).value
    worst = abs(8 * origin - 8 * corner - 8.0)
    return _result('lattice residual', DomainSpec.full_lattice(3), worst,
                   LATTICE_RESIDUAL_TOL)

def domain_checks(dom, spec=None):
    '''
    Runs every check that applies to `dom`.

    Raises:
        UnsupportedDomain for full lattices other than three-dimensional
    '''
    if dom.kind == DomainSpec.HALFPLANE:
        return [check_halfplane_residual(spec)]
    if dom.kind == DomainSpec.LATTICE:
        if dom.dim != 3:
            raise UnsupportedDomain(
                    'the lattice residual check runs in 3 dimensions only, '
                    'not on %s' % (dom,))
        return [check_lattice_residual(spec)]
    table = _GreenTable(dom)
    results = [check_residual(dom, table), check_reciprocity(dom, table),
               check_parity_zeros(dom)]
    widths = dom.sizes[:-1] if dom.kind == DomainSpec.BLOCK else dom.sizes[:1]
    results.extend(check_orthogonality(m) for m in widths)
    if dom.finite:
        results.append(check_absorption(dom))
        if len(_window(dom)) <= ORACLE_MAX_STATES:
            results.append(check_oracle(dom, table))
    results.append(check_mc_parity(dom))
    return results

def run_checks(domains=None, spec=None):
    '''
    Runs the invariant suite on `domains` (default: the built-in sample)
    and returns the list of CheckResult.
    '''
    if domains is None:
        domains = builtin_domains()
    results = []
    for dom in domains:
        results.extend(domain_checks(dom, spec))
    failed = [r for r in results if not r.passed]
    logger.info('%s checks, %s failed', len(results), len(failed))
    return results
