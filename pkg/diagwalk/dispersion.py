'''
diagwalk/dispersion.py - branches of cos(alpha) cosh(beta) = 1 and the
hyperbolic term ratios of the series solutions

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

Every separable solution of the diagonal walk's difference equation pairs an
oscillating factor with a hyperbolic one whose rate beta solves
`c * cosh(beta) = 1`, c being a cosine or a product of cosines. For c > 0
beta is real. For c < 0 we use beta = beta' + i*pi with cosh(beta') = 1/|c|;
then sinh(k*beta) = (-1)**k sinh(k*beta') and tanh(beta) = tanh(beta'), so
every term stays real and only picks up a sign. For c == 0 beta is infinite
and the terms are replaced by their limits.

All functions here work elementwise on numpy arrays as well as on scalars;
scalar input gives plain python floats back.
'''

import collections
import enum
import logging
import math
import numpy as np

from diagwalk.errors import OutOfRange

logger = logging.getLogger('diagwalk.dispersion')

class BranchKind(enum.IntEnum):
    REAL = 0
    SHIFTED = 1
    INFINITE = 2

# `kind` is a BranchKind (or an int8 array of them). `beta_prime` is None for
# the infinite branch of a scalar solution, nan in array solutions.
DispersionBranch = collections.namedtuple(
        'DispersionBranch', ['kind', 'beta_prime'])

RANGE_SLACK = 1e-12
SERIES_CUTOFF = 1e-8
ASYMPTOTIC_CUTOFF = 1e-150
LN2 = math.log(2.0)

def _unwrap(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return float(value)
    return value

def arccosh_reciprocal(a, complement=None):
    '''
    Computes arccosh(1/a) for 0 < a <= 1 without losing relative accuracy at
    either end.

    Args:
        a: scalar or array in (0, 1]
        complement (optional): 1 - a**2, when the caller can compute it more
            accurately than by subtraction (e.g. as a sum of squared sines)

    With w = 1 - a and z = 1/a we have z - 1 = w/a and
    arccosh(z) = log1p((w + sqrt(w*(1 + a))) / a), which has no cancellation.
    Below z - 1 < 1e-8 the series sqrt(2t)(1 - t/12 + 3t**2/160) is used,
    and for a < 1e-150 the asymptote log(2/a).
    '''
    a = np.asarray(a, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        if complement is None:
            w = 1.0 - a
            root = np.sqrt(w * (1.0 + a))
        else:
            complement = np.asarray(complement, dtype=float)
            w = complement / (1.0 + a)
            root = np.sqrt(complement)
        t = w / a
        beta = np.log1p((w + root) / a)
        series = np.sqrt(2.0 * t) * (1.0 - t / 12.0 + 3.0 * t * t / 160.0)
        beta = np.where(t < SERIES_CUTOFF, series, beta)
        beta = np.where(a < ASYMPTOTIC_CUTOFF, LN2 - np.log(a), beta)
    return _unwrap(beta)

def solve_branch(c, complement=None):
    '''
    Solves `c * cosh(beta) = 1` for a cosine (product) c in [-1, 1].

    Args:
        c: scalar or array
        complement (optional): 1 - c**2 computed by the caller, see
            `arccosh_reciprocal`

    Returns:
        DispersionBranch; `beta_prime` is arccosh(1/|c|)

    Raises:
        OutOfRange if |c| > 1 + 1e-12
    '''
    c = np.asarray(c, dtype=float)
    if np.any(np.abs(c) > 1.0 + RANGE_SLACK):
        raise OutOfRange(
                'cosine product must lie in [-1, 1], got %s'
                % np.max(np.abs(c)))
    a = np.minimum(np.abs(c), 1.0)
    kind = np.where(
            c > 0, BranchKind.REAL,
            np.where(c < 0, BranchKind.SHIFTED, BranchKind.INFINITE)
            ).astype(np.int8)
    if complement is not None:
        complement = np.maximum(complement, 0.0)
    beta = np.where(
            a > 0, arccosh_reciprocal(np.where(a > 0, a, 1.0), complement),
            np.nan)
    if c.ndim == 0:
        kind = BranchKind(int(kind))
        if kind is BranchKind.INFINITE:
            return DispersionBranch(kind, None)
        return DispersionBranch(kind, float(beta))
    return DispersionBranch(kind, beta)

def _arrays(br):
    kind = np.asarray(br.kind)
    beta = br.beta_prime
    if beta is None:
        beta = np.nan
    return kind, np.asarray(beta, dtype=float)

def _log_one_minus_exp(x):
    '''log(1 - exp(-2x)) for x > 0.'''
    return np.log(-np.expm1(-2.0 * x))

def _log_tanh(x):
    return _log_one_minus_exp(x) - np.log1p(np.exp(-2.0 * x))

def _branch_sign(kind, k):
    return np.where((kind == BranchKind.SHIFTED) & (np.asarray(k) % 2 == 1),
                    -1.0, 1.0)

def term_rect(br, q, b, n):
    '''
    Rectangle term sinh(q beta) sinh((n+1-b) beta) / (tanh beta sinh((n+1) beta))
    for q <= b, and the same with q and b swapped otherwise (the two series
    of the rectangle solution meet at q == b).

    Evaluated as log-magnitude plus sign so that n in the tens of thousands
    does not overflow. Limits: 1/2 [q == b] on the infinite branch,
    min(q,b) (n+1-max(q,b)) / (n+1) at beta' == 0.
    '''
    kind, beta = _arrays(br)
    q = np.asarray(q)
    b = np.asarray(b)
    lo = np.minimum(q, b)
    hi = np.maximum(q, b)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        log_mag = ((lo - hi) * beta - LN2
                   + _log_one_minus_exp(lo * beta)
                   + _log_one_minus_exp((n + 1 - hi) * beta)
                   - _log_one_minus_exp((n + 1) * beta)
                   - _log_tanh(beta))
        mag = np.where(beta > 0, np.exp(log_mag),
                       lo * (n + 1 - hi) / (n + 1.0))
    mag = np.where(kind == BranchKind.INFINITE,
                   np.where(lo == hi, 0.5, 0.0), mag)
    return _unwrap(_branch_sign(kind, q - b) * mag)

def term_semistrip(br, q, b):
    '''
    Semi-infinite strip term sinh(min(q,b) beta) exp(-max(q,b) beta) / tanh beta,
    the n -> infinity limit of `term_rect`.
    '''
    kind, beta = _arrays(br)
    q = np.asarray(q)
    b = np.asarray(b)
    lo = np.minimum(q, b)
    hi = np.maximum(q, b)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        log_mag = ((lo - hi) * beta - LN2
                   + _log_one_minus_exp(lo * beta) - _log_tanh(beta))
        mag = np.where(beta > 0, np.exp(log_mag), lo * 1.0)
    mag = np.where(kind == BranchKind.INFINITE,
                   np.where(lo == hi, 0.5, 0.0), mag)
    return _unwrap(_branch_sign(kind, q - b) * mag)

def term_strip(br, k):
    '''
    Infinite strip term exp(-k beta) / tanh beta for k >= 0; [k == 0] on the
    infinite branch.
    '''
    kind, beta = _arrays(br)
    k = np.asarray(k)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        mag = np.exp(-k * beta - _log_tanh(beta))
    mag = np.where(kind == BranchKind.INFINITE,
                   np.where(k == 0, 1.0, 0.0), mag)
    return _unwrap(_branch_sign(kind, k) * mag)
