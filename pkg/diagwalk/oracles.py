'''
diagwalk/oracles.py - independent ground truth for the Green's functions:
the absorbing Markov chain solved directly, and seeded Monte Carlo walkers

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
import concurrent.futures
import itertools
import logging
import math
import os
import numpy as np
import scipy.linalg
import scipy.special

from diagwalk.errors import (
        NotInterior, RecurrentLattice, TooLarge, UnsupportedDomain)
from diagwalk.walk_model import DomainSpec, PointClass, check_dimension, classify_point

logger = logging.getLogger('diagwalk.oracles')

MAX_STATES = 20000
THREADS_VARIABLE = 'DIAGWALK_THREADS'

_McConfig = collections.namedtuple(
        'McConfig', ['trials', 'seed', 'max_steps', 'block_size'])

class McConfig(_McConfig):
    '''
    Monte Carlo settings.

    Trials are simulated in blocks of `block_size`. Block i draws from a
    Philox stream keyed by `SeedSequence(seed, spawn_key=(i,))`, so an
    estimate depends on (trials, seed, max_steps, block_size) and nothing
    else, in particular not on the number of threads.
    '''
    __slots__ = ()

    def __new__(cls, trials, seed=0, max_steps=10**6, block_size=4096):
        for name, value in (('trials', trials), ('max_steps', max_steps),
                            ('block_size', block_size)):
            if int(value) != value or value < 1:
                raise ValueError(
                        '%s must be a positive integer, got %r' % (name, value))
        if int(seed) != seed or not 0 <= seed < 2**64:
            raise ValueError(
                    'seed must be an unsigned 64-bit integer, got %r' % (seed,))
        return super(McConfig, cls).__new__(
                cls, int(trials), int(seed), int(max_steps), int(block_size))

McEstimate = collections.namedtuple(
        'McEstimate', ['mean', 'std_error', 'trials', 'truncated_trials'])

def worker_threads():
    '''
    Number of Monte Carlo worker threads, from the environment variable
    DIAGWALK_THREADS (default 1).
    '''
    value = os.environ.get(THREADS_VARIABLE)
    if value is None or value.strip() == '':
        return 1
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        raise ValueError(
                '%s must be an integer >= 1, got %r' % (THREADS_VARIABLE, value))
    return threads

def _require_finite_source(dom, src):
    if not dom.finite:
        raise UnsupportedDomain('%s is not a finite domain' % (dom,))
    check_dimension(dom, src)
    if not dom.is_interior(src):
        raise NotInterior('source %s is not interior to %s' % (tuple(src), dom))

def _transition_system(dom, max_states):
    '''
    Returns (points, A) with A = I - Q, Q the interior-to-interior block of
    the transition matrix.
    '''
    points = np.array(list(dom.interior_points()), dtype=np.int64)
    count = len(points)
    if count > max_states:
        raise TooLarge(
                '%s has %s interior states, more than the limit of %s'
                % (dom, count, max_states))
    shape = dom.sizes
    system = np.eye(count)
    step = 0.5 ** dom.dim
    rows = np.arange(count)
    for signs in itertools.product((1, -1), repeat=dom.dim):
        neighbors = points + np.array(signs, dtype=np.int64)
        inside = dom.interior_mask(neighbors)
        columns = np.ravel_multi_index((neighbors[inside] - 1).T, shape)
        system[rows[inside], columns] -= step
    return [tuple(int(c) for c in p) for p in points], system

def fundamental_matrix(dom, max_states=MAX_STATES):
    '''
    Fundamental matrix N = (I - Q)**-1 of the absorbing chain on a finite
    domain: N[i, j] is the expected number of departures from points[j] of
    a walker started at points[i].

    Returns:
        (points, N), points being the interior points in lexicographic order

    Raises:
        UnsupportedDomain for infinite domains
        TooLarge if there are more than `max_states` interior points
    '''
    if not dom.finite:
        raise UnsupportedDomain('%s is not a finite domain' % (dom,))
    points, system = _transition_system(dom, max_states)
    inverse = scipy.linalg.solve(system, np.eye(len(points)), assume_a='pos')
    return points, inverse

def fundamental_matrix_green(dom, src, max_states=MAX_STATES):
    '''
    Expected departures from every interior point of a finite domain, by
    solving F(x) - 2**-d sum of F over the interior neighbors of x = [x == src]
    directly. The system is symmetric positive definite.

    Returns:
        ordered dict interior point -> expected departures

    Raises:
        UnsupportedDomain, NotInterior, TooLarge
    '''
    _require_finite_source(dom, src)
    points, system = _transition_system(dom, max_states)
    rhs = np.zeros(len(points))
    rhs[points.index(tuple(src))] = 1.0
    row = scipy.linalg.solve(system, rhs, assume_a='pos')
    logger.debug('solved %s states of %s from %s', len(points), dom, tuple(src))
    return collections.OrderedDict(zip(points, (float(v) for v in row)))

def expected_absorption_time(dom, src, max_states=MAX_STATES):
    '''
    Expected number of steps before absorption: every step is a departure
    from some interior point, so this is the sum of the Green's function row.
    '''
    row = fundamental_matrix_green(dom, src, max_states)
    return math.fsum(row.values())

_Trials = collections.namedtuple('Trials', ['visits', 'steps', 'stopped'])

class MonteCarloWalker(object):
    '''
    Simulates independent diagonal walks from `src` on `dom`, block by block.

    A walk stops when it leaves the interior (absorption) or, with
    `stop_at_start`, when it is back at `src`; otherwise it runs out at
    `cfg.max_steps`. `visits` counts departures from `tgt`.
    '''
    logger = logging.getLogger('diagwalk.MonteCarloWalker')

    def __init__(self, dom, src, cfg, tgt=None, stop_at_start=False):
        self.dom = dom
        self.src = np.asarray(src, dtype=np.int64)
        self.tgt = None if tgt is None else np.asarray(tgt, dtype=np.int64)
        self.cfg = cfg
        self.stop_at_start = stop_at_start

    def _generator(self, block):
        seq = np.random.SeedSequence(self.cfg.seed, spawn_key=(block,))
        return np.random.Generator(np.random.Philox(seq))

    def _block_slices(self):
        size = self.cfg.block_size
        return [
            (i, min(size, self.cfg.trials - start))
            for i, start in enumerate(range(0, self.cfg.trials, size))]

    def walk_block(self, block, count):
        rng = self._generator(block)
        pos = np.tile(self.src, (count, 1))
        live = np.arange(count)
        visits = np.zeros(count, dtype=np.int64)
        steps = np.full(count, self.cfg.max_steps, dtype=np.int64)
        stopped = np.zeros(count, dtype=bool)
        for step in range(self.cfg.max_steps):
            if not len(live):
                break
            if self.tgt is not None:
                here = np.all(pos == self.tgt, axis=1)
                visits[live[here]] += 1
            pos += 2 * rng.integers(0, 2, size=pos.shape, dtype=np.int8) - 1
            if self.stop_at_start:
                done = np.all(pos == self.src, axis=1)
            else:
                done = ~self.dom.interior_mask(pos)
            if done.any():
                steps[live[done]] = step + 1
                stopped[live[done]] = True
                pos = pos[~done]
                live = live[~done]
        self.logger.debug(
                'block %s: %s walks, %s ran out of steps',
                block, count, len(live))
        return _Trials(visits, steps, stopped)

    def run(self):
        '''
        Runs every block and concatenates the per-walk results in block
        order.
        '''
        slices = self._block_slices()
        threads = min(worker_threads(), len(slices))
        if threads > 1:
            with concurrent.futures.ThreadPoolExecutor(
                    max_workers=threads) as pool:
                results = list(pool.map(
                    lambda s: self.walk_block(*s), slices))
        else:
            results = [self.walk_block(*s) for s in slices]
        return _Trials(*(np.concatenate(field) for field in zip(*results)))

def _estimate(values, trials, expect_truncation=False):
    values = np.asarray(values, dtype=float)
    count = len(values)
    mean = float(np.mean(values))
    if count > 1:
        std_error = float(np.std(values, ddof=1)) / math.sqrt(count)
    else:
        logger.warning('a single trial gives no standard error, reporting 0')
        std_error = 0.0
    truncated = count - int(np.count_nonzero(trials.stopped))
    if truncated:
        log = logger.info if expect_truncation else logger.warning
        log(
                '%s of %s trials were cut off at max_steps', truncated, count)
    return McEstimate(mean, std_error, count, truncated)

def _require_walkable(dom):
    if dom.kind == DomainSpec.HALFPLANE:
        raise UnsupportedDomain(
                'walks on the half-plane are not guaranteed to be absorbed '
                'in a bounded number of steps')
    if dom.kind == DomainSpec.LATTICE and dom.dim <= 2:
        raise RecurrentLattice(
                'the diagonal walk in %s dimensions is recurrent' % dom.dim)

def mc_expected_departures(dom, src, tgt, cfg):
    '''
    Monte Carlo estimate of the expected number of departures from `tgt`.
    Walks cut off at `cfg.max_steps` keep the departures made so far, so the
    estimate is a lower bound when `truncated_trials` > 0 (always the case
    on the full lattice, where nothing absorbs).

    Raises:
        NotInterior if src is not interior or tgt is exterior
        UnsupportedDomain for the half-plane
        RecurrentLattice for the lattice in d <= 2
    '''
    _require_walkable(dom)
    check_dimension(dom, src)
    if not dom.is_interior(src):
        raise NotInterior('source %s is not interior to %s' % (tuple(src), dom))
    if classify_point(dom, tgt) is PointClass.EXTERIOR:
        raise NotInterior(
                'target %s lies outside %s and its boundary' % (tuple(tgt), dom))
    trials = MonteCarloWalker(dom, src, cfg, tgt=tgt).run()
    return _estimate(
            trials.visits, trials,
            expect_truncation=dom.kind == DomainSpec.LATTICE)

def mc_absorption_time(dom, src, cfg):
    '''Monte Carlo estimate of the expected number of steps to absorption.'''
    _require_walkable(dom)
    if dom.kind == DomainSpec.LATTICE:
        raise UnsupportedDomain('nothing is absorbed on the full lattice')
    check_dimension(dom, src)
    if not dom.is_interior(src):
        raise NotInterior('source %s is not interior to %s' % (tuple(src), dom))
    trials = MonteCarloWalker(dom, src, cfg).run()
    return _estimate(trials.steps, trials)

def mc_return_prob(d, cfg):
    '''
    Fraction of walks on the full d-dimensional lattice that are back at
    the origin within `cfg.max_steps` steps. Walks that have not returned by
    then count as truncated.
    '''
    if d <= 2:
        raise RecurrentLattice(
                'the diagonal walk in %s dimensions is recurrent; it returns '
                'with probability 1' % d)
    dom = DomainSpec.full_lattice(d)
    trials = MonteCarloWalker(dom, (0,) * d, cfg, stop_at_start=True).run()
    return _estimate(trials.stopped, trials, expect_truncation=True)

def central_weights(terms):
    '''
    Probability that a simple +/-1 walk is at its start after 2k steps,
    C(2k, k) / 4**k, for k = 0..terms-1.
    '''
    k = np.arange(terms, dtype=float)
    log_weight = (scipy.special.gammaln(2 * k + 1)
                  - 2 * scipy.special.gammaln(k + 1) - 2 * k * math.log(2.0))
    return np.exp(log_weight)

def return_prob_within(d, max_steps):
    '''
    Exact probability that the diagonal walk on the full d-dimensional
    lattice is back at the origin within `max_steps` steps.

    Coordinates move independently, so the walk is at the origin after 2k
    steps with probability u_k = (C(2k, k) / 4**k)**d. First-return
    probabilities f_k follow from the renewal equation
    u_k = sum_{j=1..k} f_j u_{k-j}.
    '''
    if d < 1 or max_steps < 0:
        raise ValueError('need d >= 1 and max_steps >= 0, got %r, %r'
                         % (d, max_steps))
    half = max_steps // 2
    u = central_weights(half + 1) ** d
    first = np.zeros(half + 1)
    for k in range(1, half + 1):
        first[k] = u[k] - np.dot(first[1:k], u[k - 1:0:-1])
    return math.fsum(first)

def lattice_green_series(d, terms=100000):
    '''
    Expected visits to the origin of the diagonal walk on the full
    d-dimensional lattice, sum over k of (C(2k, k) / 4**k)**d.

    The first `terms` terms are summed exactly; the rest is replaced by the
    integral from terms - 1/2 of the asymptotic form
    (pi k)**(-d/2) (1 - d/(8k)).
    '''
    if d <= 2:
        raise RecurrentLattice(
                'the series diverges for the diagonal walk in %s dimensions' % d)
    if terms < 2:
        raise ValueError('terms must be at least 2, got %r' % (terms,))
    head = math.fsum(central_weights(terms) ** d)
    edge = terms - 0.5
    half = 0.5 * d
    tail = math.pi ** -half * (
            edge ** (1 - half) / (half - 1)
            - d / 8.0 * edge ** -half / half)
    return head + tail
