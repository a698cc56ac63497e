'''
diagwalk/quadrature_green.py - integral Green's functions of the diagonal
walk (half-plane, full d-dimensional lattice) and lattice return constants

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
import logging
import math
import numpy as np

from diagwalk import dispersion
from diagwalk.errors import RecurrentLattice
from diagwalk.walk_model import parity_compatible

logger = logging.getLogger('diagwalk.quadrature_green')

_QuadratureSpec = collections.namedtuple(
        'QuadratureSpec', ['abs_tol', 'rel_tol', 'max_subdivisions'])

class QuadratureSpec(_QuadratureSpec):
    '''
    Tolerances for adaptive quadrature. An integral counts as converged when
    its error estimate is at most max(abs_tol, rel_tol * |value|).
    `max_subdivisions` caps the number of bisections per integral.
    '''
    __slots__ = ()

    def __new__(cls, abs_tol=1e-8, rel_tol=1e-8, max_subdivisions=100000):
        if not abs_tol > 0 or not rel_tol > 0:
            raise ValueError(
                    'tolerances must be positive, got abs_tol=%r rel_tol=%r'
                    % (abs_tol, rel_tol))
        if int(max_subdivisions) != max_subdivisions or max_subdivisions < 1:
            raise ValueError(
                    'max_subdivisions must be a positive integer, got %r'
                    % (max_subdivisions,))
        return super(QuadratureSpec, cls).__new__(
                cls, float(abs_tol), float(rel_tol), int(max_subdivisions))

    def scaled(self, factor):
        '''Same spec with both tolerances multiplied by `factor`.'''
        return QuadratureSpec(
                self.abs_tol * factor, self.rel_tol * factor,
                self.max_subdivisions)

QuadratureResult = collections.namedtuple(
        'QuadratureResult',
        ['value', 'error_estimate', 'evaluations', 'converged'])

ReturnConstant = collections.namedtuple(
        'ReturnConstant', ['constant', 'p_return', 'quadrature'])

DIAGONAL = 'diagonal'
REGULAR = 'regular'

# default for d >= 5, where nested quadrature cost grows by a factor of
# a few hundred per dimension
LOOSE_SPEC = QuadratureSpec(1e-5, 1e-5)

# 15-point Kronrod rule and its embedded 7-point Gauss rule on [-1, 1]
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327)

NODES = np.concatenate([-np.array(_XGK[:7]), [0.0], np.array(_XGK[6::-1])])
KRONROD_WEIGHTS = np.concatenate(
        [np.array(_WGK[:7]), [_WGK[7]], np.array(_WGK[6::-1])])
GAUSS_WEIGHTS = np.zeros(15)
for _i in (1, 3, 5):
    GAUSS_WEIGHTS[_i] = GAUSS_WEIGHTS[14 - _i] = _WG[_i // 2]
GAUSS_WEIGHTS[7] = _WG[3]

# intervals per integrand call, bounds memory in nested integrals
CHUNK = 4096

def _gauss_kronrod(func, lo, hi, owner):
    values = np.empty(len(lo))
    errors = np.empty(len(lo))
    carried = np.zeros(len(lo))
    for start in range(0, len(lo), CHUNK):
        stop = start + CHUNK
        center = 0.5 * (lo[start:stop] + hi[start:stop])
        half = 0.5 * (hi[start:stop] - lo[start:stop])
        x = center[:, None] + half[:, None] * NODES[None, :]
        fx = func(x.ravel(), np.repeat(owner[start:stop], 15))
        if isinstance(fx, tuple):
            fx, fc = fx
            fc = np.asarray(fc, dtype=float).reshape(x.shape)
            carried[start:stop] = half * np.sum(fc * KRONROD_WEIGHTS, axis=1)
        fx = np.asarray(fx, dtype=float).reshape(x.shape)
        kronrod = half * np.sum(fx * KRONROD_WEIGHTS, axis=1)
        gauss = half * np.sum(fx * GAUSS_WEIGHTS, axis=1)
        values[start:stop] = kronrod
        errors[start:stop] = np.abs(kronrod - gauss)
    return values, errors, carried

BatchResult = collections.namedtuple(
        'BatchResult',
        ['values', 'errors', 'carried', 'evaluations', 'converged'])

def integrate_batch(func, breakpoints, count, spec):
    '''
    Integrates `count` functions over the same interval at once.

    Args:
        func: called as `func(x, owner)` with two 1-d arrays of equal length;
            must return the value of integrand number `owner[i]` at `x[i]`,
            or a pair of such arrays (values, carried) where `carried` is
            integrated along with the values but plays no part in refinement
        breakpoints: increasing sequence, first and last are the limits of
            integration and the ones in between are initial splits
        count: number of integrands
        spec (QuadratureSpec): tolerances, applied to each integrand

    Every integrand starts with the pieces between breakpoints, each
    integrated with the 7/15-point Gauss-Kronrod pair (error estimate
    |K15 - G7|). While an integrand's total error exceeds its tolerance,
    every piece of it whose error exceeds tolerance / pieces is bisected.
    Decisions depend on the integrand's own pieces only, so its result does
    not depend on what else is in the batch.

    Returns:
        BatchResult of per-integrand arrays plus the total number of
        integrand evaluations
    '''
    edges = np.asarray(breakpoints, dtype=float)
    pieces = len(edges) - 1
    lo = np.tile(edges[:-1], count)
    hi = np.tile(edges[1:], count)
    owner = np.repeat(np.arange(count), pieces)
    values, errors, carried = _gauss_kronrod(func, lo, hi, owner)
    evaluations = 15 * len(lo)
    splits = np.zeros(count, dtype=np.int64)
    while True:
        total = np.bincount(owner, weights=values, minlength=count)
        total_error = np.bincount(owner, weights=errors, minlength=count)
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
        pending = (total_error > tol) & (splits < spec.max_subdivisions)
        if not pending.any():
            break
        npieces = np.bincount(owner, minlength=count)
        mid = 0.5 * (lo + hi)
        refine = (pending[owner] & (errors > tol[owner] / npieces[owner])
                  & (mid > lo) & (mid < hi))
        # pieces too narrow to bisect: give up on these integrands
        stuck = pending & (np.bincount(owner[refine], minlength=count) == 0)
        splits[stuck] = spec.max_subdivisions
        if not refine.any():
            continue
        new_lo = np.concatenate([lo[refine], mid[refine]])
        new_hi = np.concatenate([mid[refine], hi[refine]])
        new_owner = np.concatenate([owner[refine], owner[refine]])
        new_values, new_errors, new_carried = _gauss_kronrod(
                func, new_lo, new_hi, new_owner)
        evaluations += 15 * len(new_lo)
        splits += np.bincount(owner[refine], minlength=count)
        keep = ~refine
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        owner = np.concatenate([owner[keep], new_owner])
        values = np.concatenate([values[keep], new_values])
        errors = np.concatenate([errors[keep], new_errors])
        carried = np.concatenate([carried[keep], new_carried])
    total_carried = np.bincount(owner, weights=carried, minlength=count)
    return BatchResult(
            total, total_error, total_carried, evaluations, total_error <= tol)

def integrate_adaptive(f, a, b, spec=None, points=()):
    '''
    Adaptive Gauss-Kronrod quadrature of a vectorized function on [a, b].

    Args:
        f: takes an array of abscissae, returns an array of values
        a, b: finite limits, a < b; f is only evaluated strictly inside
        spec (QuadratureSpec): tolerances, default QuadratureSpec()
        points: interior points where the interval is split up front

    Returns:
        QuadratureResult; `converged` is False if the subdivision budget ran
        out first
    '''
    spec = spec or QuadratureSpec()
    breakpoints = [a] + sorted(p for p in points if a < p < b) + [b]
    result = integrate_batch(
            lambda x, owner: f(x), breakpoints, 1, spec)
    quad = QuadratureResult(
            float(result.values[0]), float(result.errors[0]),
            result.evaluations, bool(result.converged[0]))
    if not quad.converged:
        logger.warning(
                'quadrature on [%s, %s] did not converge: %r', a, b, quad)
    return quad

class CubeIntegrator(object):
    '''
    Nested adaptive quadrature of the average of a function over
    [0, pi]**levels.

    The integrand is described incrementally. `initial` is a tuple of
    scalars, `advance(level, state, x)` folds the abscissa `x` of axis `level`
    into the state (a tuple of arrays) and `leaf(state)` evaluates the
    integrand once every axis has been folded in. Each axis is split at pi/2
    and integrated with `integrate_batch`, all abscissae of one level going
    into a single batch for the next.

    The tolerance of `spec` applies to `scale * average` and is shared evenly
    among the levels. Every level reports its own Gauss-Kronrod estimate plus
    the average, over its abscissae, of the estimates reported by the level
    below; the outermost total is the error estimate of the result.
    '''
    logger = logging.getLogger('diagwalk.CubeIntegrator')

    BREAKPOINTS = (0.0, 0.5 * math.pi, math.pi)

    def __init__(self, levels, advance, leaf, spec=None, scale=1.0):
        self.levels = levels
        self.advance = advance
        self.leaf = leaf
        self.spec = spec or QuadratureSpec()
        self.scale = scale
        self.level_spec = self.spec.scaled(1.0 / (levels * abs(scale)))

    def integrate(self, initial=()):
        self._evaluations = 0
        self._converged = True
        state = tuple(np.atleast_1d(np.asarray(s, dtype=float)) for s in initial)
        values, errors = self._average(0, state, 1)
        result = QuadratureResult(
                self.scale * float(values[0]),
                abs(self.scale) * float(errors[0]),
                self._evaluations, self._converged)
        self.logger.debug(
                '%s-fold integral: %r', self.levels, result)
        if not result.converged:
            self.logger.warning(
                    '%s-fold integral did not converge: %r',
                    self.levels, result)
        return result

    def _average(self, level, state, count):
        last = level == self.levels - 1
        def integrand(x, owner):
            inner = self.advance(level, tuple(s[owner] for s in state), x)
            if last:
                self._evaluations += len(x)
                return self.leaf(inner)
            return self._average(level + 1, inner, len(x))
        result = integrate_batch(
                integrand, self.BREAKPOINTS, count, self.level_spec)
        self._converged = self._converged and bool(np.all(result.converged))
        return (result.values / math.pi,
                (result.errors + result.carried) / math.pi)

def _zero_result():
    return QuadratureResult(0.0, 0.0, 0, True)

def _halfplane_integrand(a, p, s):
    def leaf(state):
        x, = state
        cos = np.cos(x)
        sin = np.sin(x)
        branch = dispersion.solve_branch(cos, complement=sin * sin)
        return (np.sin(a * x) * np.sin(p * x)
                * dispersion.term_strip(branch, abs(s)))
    def advance(level, state, x):
        return (x,)
    return advance, leaf

def halfplane_green(a, p, s, spec=None):
    '''
    Expected departures from (p, s) in the half-plane p >= 1, starting at
    (a, 0):

        F = 2/pi int_0^pi sin(a l) sin(p l) exp(-|s| mu) / tanh(mu) dl,
        cos(l) cosh(mu) = 1

    For l > pi/2 mu sits on the shifted branch; the integrand is real and
    continuous through l = pi/2, where the interval is split.
    '''
    if a < 1 or p < 1:
        raise ValueError('a and p must be >= 1, got a=%r p=%r' % (a, p))
    if not parity_compatible((p, s), (a, 0)):
        return _zero_result()
    advance, leaf = _halfplane_integrand(a, p, s)
    return CubeIntegrator(1, advance, leaf, spec, scale=2.0).integrate()

def _lattice_integrand(u):
    '''
    State (P, S, W): running cosine product, 1 - P**2 accumulated as a sum of
    non-negative terms, and the running product of cos(u_k l_k).
    '''
    transverse = u[:-1]
    k = abs(u[-1])
    def advance(level, state, x):
        product, complement, weight = state
        cos = np.cos(x)
        sin = np.sin(x)
        return (product * cos,
                complement + product * product * sin * sin,
                weight * np.cos(transverse[level] * x))
    def leaf(state):
        product, complement, weight = state
        branch = dispersion.solve_branch(product, complement=complement)
        return weight * dispersion.term_strip(branch, k)
    return advance, leaf

def lattice_green_nd(u, spec=None):
    '''
    Expected visits to `u` of the diagonal walk started at the origin of the
    full d-dimensional lattice, d >= 3:

        F(u) = pi**(1-d) int cos(u_1 l_1)...cos(u_{d-1} l_{d-1})
                   exp(-|u_d| t) / tanh(t) dl_1...dl_{d-1},
        cosh(t) prod_k cos(l_k) = 1

    The integrand blows up like 1/distance at the corners of [0, pi]**(d-1),
    where the cosine product is +/-1.

    Raises:
        RecurrentLattice for d <= 2
    '''
    u = tuple(int(c) for c in u)
    d = len(u)
    if d <= 2:
        raise RecurrentLattice(
                'the diagonal walk in %s dimensions is recurrent; '
                'expected visits diverge' % d)
    if not parity_compatible(u, (0,) * d):
        return _zero_result()
    advance, leaf = _lattice_integrand(u)
    integrator = CubeIntegrator(d - 1, advance, leaf, spec)
    return integrator.integrate((1.0, 0.0, 1.0))

def _regular_integrand():
    # state: D = 2 - cos l - cos m as a sum of 2 sin(x/2)**2 terms;
    # cosh(t) = 1 + D so sinh(t) = sqrt(D (D + 2))
    def advance(level, state, x):
        gap, = state
        half = np.sin(0.5 * x)
        return (gap + 2.0 * half * half,)
    def leaf(state):
        gap, = state
        return 1.0 / np.sqrt(gap * (gap + 2.0))
    return advance, leaf

def return_constant(style, dim=3, spec=None):
    '''
    Expected number of visits to the start of a walk on the full lattice,
    and the probability 1 - 1/constant of ever returning.

    Args:
        style: 'diagonal' (any dim >= 3) or 'regular' (axis-parallel steps,
            dim 3 only), for which the constant is
            3/pi**2 int int 1/sinh(t) dl dm, cos l + cos m + cosh t = 3
        dim: lattice dimension
        spec (QuadratureSpec): tolerances; for the diagonal style in
            dim >= 5 the default loosens to 1e-5

    Returns:
        ReturnConstant(constant, p_return, quadrature)

    Raises:
        RecurrentLattice for dim <= 2
        ValueError for an unknown style or a regular lattice with dim != 3
    '''
    if dim <= 2:
        raise RecurrentLattice(
                'the %s walk in %s dimensions is recurrent; it returns with '
                'probability 1' % (style, dim))
    if style == DIAGONAL:
        if spec is None and dim >= 5:
            spec = LOOSE_SPEC
        quad = lattice_green_nd((0,) * dim, spec)
    elif style == REGULAR:
        if dim != 3:
            raise ValueError('regular return constant is only available '
                             'for dim 3, got %s' % dim)
        advance, leaf = _regular_integrand()
        quad = CubeIntegrator(2, advance, leaf, spec, scale=3.0).integrate((0.0,))
    else:
        raise ValueError('unknown lattice style %r' % (style,))
    constant = quad.value
    return ReturnConstant(constant, 1.0 - 1.0 / constant, quad)

def _watson_integrand(style):
    if style == DIAGONAL:
        # 1 - P = (1 - P**2) / (1 + P), the latter with no cancellation
        # where P is near 1
        def advance(level, state, x):
            product, complement = state
            sin = np.sin(x)
            return (product * np.cos(x),
                    complement + product * product * sin * sin)
        def leaf(state):
            product, complement = state
            gap = np.where(product > 0, complement / (1.0 + np.abs(product)),
                           1.0 - product)
            return 1.0 / gap
        return advance, leaf, (1.0, 0.0), 1.0
    def advance(level, state, x):
        gap, = state
        half = np.sin(0.5 * x)
        return (gap + 2.0 * half * half,)
    def leaf(state):
        gap, = state
        return 1.0 / gap
    return advance, leaf, (0.0,), 3.0

def watson_integral(style, dim=3, spec=None):
    '''
    The return constant as a dim-fold Watson integral:
    pi**-d int 1/(1 - prod cos l_k) for the diagonal lattice, and
    3 pi**-3 int 1/(3 - cos l_1 - cos l_2 - cos l_3) for the regular one.

    An independent route to the constants of `return_constant`, one
    integration deeper and with a 1/distance**2 corner singularity.
    '''
    if dim <= 2:
        raise RecurrentLattice(
                'the %s walk in %s dimensions is recurrent' % (style, dim))
    if style not in (DIAGONAL, REGULAR):
        raise ValueError('unknown lattice style %r' % (style,))
    if style == REGULAR and dim != 3:
        raise ValueError('regular Watson integral needs dim 3, got %s' % dim)
    advance, leaf, initial, scale = _watson_integrand(style)
    quad = CubeIntegrator(dim, advance, leaf, spec, scale=scale).integrate(initial)
    return ReturnConstant(quad.value, 1.0 - 1.0 / quad.value, quad)
