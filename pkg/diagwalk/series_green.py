'''
diagwalk/series_green.py - exact finite-sum Green's functions of the
diagonal walk on rectangles, strips and blocks

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

F_src(tgt) is the expected number of departures from `tgt` of a walker that
starts at `src` and is absorbed on the boundary. Every function here returns
0.0 for a target on the absorbing boundary (F vanishes there), exactly 0.0
for a target of the wrong parity, and raises NotInterior for sources that
are not interior and for exterior targets.
'''

import collections
import logging
import math
import numpy as np

from diagwalk import dispersion
from diagwalk.errors import NotInterior, UnsupportedDomain
from diagwalk.walk_model import (
        DomainSpec, PointClass, boundary_set, check_dimension, classify_point,
        diagonal_neighbors, parity_compatible)

logger = logging.getLogger('diagwalk.series_green')

_AbsorptionMap = collections.namedtuple(
        'AbsorptionMap', ['domain', 'source', 'entries'])

class AbsorptionMap(_AbsorptionMap):
    '''
    Probability of being absorbed at each boundary point, as an ordered list
    `entries` of `(point, probability)` pairs following `boundary_set`.
    '''
    __slots__ = ()

    def total(self):
        return math.fsum(p for _, p in self.entries)

    def as_dict(self):
        return collections.OrderedDict(self.entries)

def mode_cosines(m):
    '''
    cos(r pi / (m+1)) for r = 1..m, exactly 0 at 2r == m+1 and exactly
    antisymmetric under r -> m+1-r.
    '''
    r = np.arange(1, m + 1)
    mirror = np.minimum(r, m + 1 - r)
    cos = np.cos(mirror * np.pi / (m + 1))
    cos = np.where(2 * r > m + 1, -cos, cos)
    return np.where(2 * r == m + 1, 0.0, cos)

def mode_sines(a, m):
    '''
    sin(a r pi / (m+1)) for r = 1..m, argument reduced modulo 2(m+1) and
    exactly 0 where a r is a multiple of m+1.
    '''
    r = np.arange(1, m + 1)
    k = (a * r) % (2 * (m + 1))
    return np.where(k % (m + 1) == 0, 0.0, np.sin(k * np.pi / (m + 1)))

def orthogonality_sum(a, p, m):
    '''(2/(m+1)) sum_r sin(a r pi/(m+1)) sin(p r pi/(m+1)), which is [a == p].'''
    return 2.0 / (m + 1) * math.fsum(mode_sines(a, m) * mode_sines(p, m))

def _require_source(dom, src):
    check_dimension(dom, src)
    if not dom.is_interior(src):
        raise NotInterior('source %s is not interior to %s' % (tuple(src), dom))

def _target_class(dom, tgt):
    cls = classify_point(dom, tgt)
    if cls is PointClass.EXTERIOR:
        raise NotInterior(
                'target %s lies outside %s and its boundary' % (tuple(tgt), dom))
    return cls

def _zero_target(dom, src, tgt):
    _require_source(dom, src)
    cls = _target_class(dom, tgt)
    return cls is PointClass.BOUNDARY or not parity_compatible(tgt, src)

def rect_green(m, n, src, tgt):
    '''
    Expected departures from `tgt` on the rectangle 1 <= p <= m, 1 <= q <= n,
    starting at `src`:

        F(p, q) = 4/(m+1) sum_r sin(a r pi/(m+1)) sin(p r pi/(m+1)) T_r(q, b)

    with (a, b) = src, (p, q) = tgt and T_r the `dispersion.term_rect` ratio
    on the branch of cos(r pi/(m+1)) cosh(beta_r) = 1.
    '''
    dom = DomainSpec.rectangle(m, n)
    if _zero_target(dom, src, tgt):
        return 0.0
    a, b = src
    p, q = tgt
    branch = dispersion.solve_branch(mode_cosines(m))
    terms = (mode_sines(a, m) * mode_sines(p, m)
             * dispersion.term_rect(branch, q, b, n))
    return 4.0 / (m + 1) * math.fsum(terms)

def semistrip_green(m, src, tgt):
    '''
    Expected departures on the semi-infinite strip 1 <= p <= m, q >= 1; the
    n -> infinity limit of `rect_green`.
    '''
    dom = DomainSpec.semi_strip(m)
    if _zero_target(dom, src, tgt):
        return 0.0
    a, b = src
    p, q = tgt
    branch = dispersion.solve_branch(mode_cosines(m))
    terms = (mode_sines(a, m) * mode_sines(p, m)
             * dispersion.term_semistrip(branch, q, b))
    return 4.0 / (m + 1) * math.fsum(terms)

def strip_green(m, a, p, s):
    '''
    Expected departures on the infinite strip 1 <= p <= m from the source
    (a, 0) to the target (p, s):

        F = 2/(m+1) sum_r sin(a r pi/(m+1)) sin(p r pi/(m+1)) exp(-|s| beta_r) / tanh(beta_r)
    '''
    dom = DomainSpec.strip(m)
    if _zero_target(dom, (a, 0), (p, s)):
        return 0.0
    branch = dispersion.solve_branch(mode_cosines(m))
    terms = (mode_sines(a, m) * mode_sines(p, m)
             * dispersion.term_strip(branch, abs(s)))
    return 2.0 / (m + 1) * math.fsum(terms)

def block_green(l, m, n, src, tgt):
    '''
    Expected departures in the block 1 <= p <= l, 1 <= q <= m, 1 <= r <= n.
    Double sum over the transverse modes (s, t), s outer, with the rectangle
    term on the branch of cos(s pi/(l+1)) cos(t pi/(m+1)) cosh(beta_st) = 1.
    '''
    dom = DomainSpec.block(l, m, n)
    if _zero_target(dom, src, tgt):
        return 0.0
    a, b, c = src
    p, q, r = tgt
    cos = np.outer(mode_cosines(l), mode_cosines(m))
    weight = np.outer(mode_sines(a, l) * mode_sines(p, l),
                      mode_sines(b, m) * mode_sines(q, m))
    branch = dispersion.solve_branch(cos)
    terms = weight * dispersion.term_rect(branch, r, c, n)
    return 8.0 / ((l + 1) * (m + 1)) * math.fsum(terms.ravel())

def green(dom, src, tgt):
    '''
    Dispatches to the series solution for `dom`. The strip is addressed with
    ordinary points: source (a, b) and target (p, q) give s = q - b.

    Raises:
        UnsupportedDomain for the half-plane and the full lattice, which have
        integral solutions only (see `quadrature_green`)
    '''
    check_dimension(dom, src)
    check_dimension(dom, tgt)
    if dom.kind == DomainSpec.RECT:
        return rect_green(dom.sizes[0], dom.sizes[1], src, tgt)
    if dom.kind == DomainSpec.SEMISTRIP:
        return semistrip_green(dom.sizes[0], src, tgt)
    if dom.kind == DomainSpec.STRIP:
        return strip_green(dom.sizes[0], src[0], tgt[0], tgt[1] - src[1])
    if dom.kind == DomainSpec.BLOCK:
        l, m, n = dom.sizes
        return block_green(l, m, n, src, tgt)
    raise UnsupportedDomain('no series solution on %s' % (dom,))

def green_row(dom, src):
    '''
    Returns an ordered dict interior point -> F_src(point) for a finite
    domain.
    '''
    if not dom.finite:
        raise UnsupportedDomain('%s is not a finite domain' % (dom,))
    _require_source(dom, src)
    return collections.OrderedDict(
            (x, green(dom, src, x)) for x in dom.interior_points())

def absorption_probs(dom, src):
    '''
    Absorption probabilities on the boundary of a finite domain.

    Absorption at a boundary point happens on a step out of one of its
    interior diagonal neighbors, so

        P(boundary point) = 2**-d sum over interior neighbors x of F_src(x)
    '''
    row = green_row(dom, src)
    share = 0.5 ** dom.dim
    entries = []
    for point in boundary_set(dom):
        mass = math.fsum(row[x] for x in diagonal_neighbors(point) if x in row)
        entries.append((point, share * mass))
    result = AbsorptionMap(dom, tuple(src), entries)
    logger.debug('absorption map on %s from %s sums to %r',
                 dom, tuple(src), result.total())
    return result

def return_prob_finite(dom, src):
    '''
    Probability that a walker started at `src` comes back to `src` at least
    once before it is absorbed: 1 - 1/F_src(src).
    '''
    if not dom.finite:
        raise UnsupportedDomain('%s is not a finite domain' % (dom,))
    visits = green(dom, src, src)
    return 1.0 - 1.0 / visits
