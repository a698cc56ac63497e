'''
diagwalk/walk_model.py - diagonal lattice geometry

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
import enum
import itertools
import numpy as np

from diagwalk.errors import DimensionMismatch, UnsupportedDomain

# Lattice points are plain tuples of python ints. Walkers store coordinates
# in int64 arrays, which bounds coordinates to +/- 2**63 - 1.

class PointClass(enum.Enum):
    INTERIOR = 'interior'
    BOUNDARY = 'boundary'
    EXTERIOR = 'exterior'

def _positive_int(name, value):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ValueError('%s must be a positive integer, got %r' % (name, value))
    return int(value)

_DomainSpec = collections.namedtuple('DomainSpec', ['kind', 'sizes'])

class DomainSpec(_DomainSpec):
    '''
    One of the six domain shapes, with an absorbing boundary.

    `kind` is one of the names below and `sizes` the tuple of its size
    parameters. Build instances with the classmethods, e.g.
    `DomainSpec.rectangle(2, 2)`, or `DomainSpec.parse('rect', [2, 2])`.

        kind         sizes      interior
        'rect'       (m, n)     1 <= p <= m, 1 <= q <= n
        'semistrip'  (m,)       1 <= p <= m, q >= 1
        'strip'      (m,)       1 <= p <= m, any q
        'halfplane'  ()         p >= 1, any q
        'block'      (l, m, n)  1 <= p <= l, 1 <= q <= m, 1 <= r <= n
        'lattice'    (d,)       everything; there is no boundary
    '''
    __slots__ = ()

    RECT = 'rect'
    SEMISTRIP = 'semistrip'
    STRIP = 'strip'
    HALFPLANE = 'halfplane'
    BLOCK = 'block'
    LATTICE = 'lattice'
    KINDS = (RECT, SEMISTRIP, STRIP, HALFPLANE, BLOCK, LATTICE)

    @classmethod
    def rectangle(cls, m, n):
        return cls(cls.RECT, (_positive_int('m', m), _positive_int('n', n)))

    @classmethod
    def semi_strip(cls, m):
        return cls(cls.SEMISTRIP, (_positive_int('m', m),))

    @classmethod
    def strip(cls, m):
        return cls(cls.STRIP, (_positive_int('m', m),))

    @classmethod
    def half_plane(cls):
        return cls(cls.HALFPLANE, ())

    @classmethod
    def block(cls, l, m, n):
        return cls(cls.BLOCK, (
            _positive_int('l', l), _positive_int('m', m),
            _positive_int('n', n)))

    @classmethod
    def full_lattice(cls, d):
        d = _positive_int('d', d)
        if d < 2:
            raise ValueError('full lattice needs d >= 2, got %s' % d)
        return cls(cls.LATTICE, (d,))

    @classmethod
    def parse(cls, kind, sizes=()):
        '''
        Builds a domain from its kind name and a list of size parameters.

        Raises:
            ValueError if the kind is unknown or the number of sizes is wrong
        '''
        builders = {
            cls.RECT: cls.rectangle, cls.SEMISTRIP: cls.semi_strip,
            cls.STRIP: cls.strip, cls.HALFPLANE: cls.half_plane,
            cls.BLOCK: cls.block, cls.LATTICE: cls.full_lattice}
        if kind not in builders:
            raise ValueError('unknown domain kind %r' % (kind,))
        try:
            return builders[kind](*sizes)
        except TypeError:
            raise ValueError(
                    'domain %r takes a different number of sizes than %r'
                    % (kind, tuple(sizes)))

    @property
    def dim(self):
        if self.kind == self.LATTICE:
            return self.sizes[0]
        if self.kind == self.BLOCK:
            return 3
        return 2

    @property
    def bounds(self):
        '''Per-axis (lo, hi) of the interior, None where unbounded.'''
        if self.kind == self.RECT:
            return ((1, self.sizes[0]), (1, self.sizes[1]))
        if self.kind == self.SEMISTRIP:
            return ((1, self.sizes[0]), (1, None))
        if self.kind == self.STRIP:
            return ((1, self.sizes[0]), (None, None))
        if self.kind == self.HALFPLANE:
            return ((1, None), (None, None))
        if self.kind == self.BLOCK:
            return tuple((1, size) for size in self.sizes)
        return ((None, None),) * self.sizes[0]

    @property
    def finite(self):
        return self.kind in (self.RECT, self.BLOCK)

    def is_interior(self, x):
        for coord, (lo, hi) in zip(x, self.bounds):
            if lo is not None and coord < lo:
                return False
            if hi is not None and coord > hi:
                return False
        return True

    def interior_mask(self, coords):
        '''
        Vectorized `is_interior` over an (N, d) integer array.
        '''
        coords = np.asarray(coords)
        mask = np.ones(coords.shape[0], dtype=bool)
        for axis, (lo, hi) in enumerate(self.bounds):
            if lo is not None:
                mask &= coords[:, axis] >= lo
            if hi is not None:
                mask &= coords[:, axis] <= hi
        return mask

    def interior_points(self):
        '''
        Yields the interior points of a finite domain in lexicographic order.
        '''
        if not self.finite:
            raise UnsupportedDomain(
                    '%s domain has infinitely many interior points' % self.kind)
        ranges = [range(lo, hi + 1) for lo, hi in self.bounds]
        return itertools.product(*ranges)

    def __str__(self):
        return '%s(%s)' % (self.kind, ','.join(str(s) for s in self.sizes))

def check_dimension(dom, x):
    if len(x) != dom.dim:
        raise DimensionMismatch(
                'point %s has dimension %s but %s domain has dimension %s'
                % (tuple(x), len(x), dom, dom.dim))

def diagonal_neighbors(x):
    '''
    Returns the 2**d points reached from `x` in one diagonal step, ordered
    lexicographically by sign pattern with + before -.

    >>> diagonal_neighbors((0, 0))
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    '''
    x = tuple(int(c) for c in x)
    return [
        tuple(c + s for c, s in zip(x, signs))
        for signs in itertools.product((1, -1), repeat=len(x))]

def classify_point(dom, x):
    '''
    Classifies `x` as interior, absorbing boundary (a non-interior point one
    diagonal step away from the interior) or exterior.

    Raises:
        DimensionMismatch if `x` does not have the domain's dimension
    '''
    check_dimension(dom, x)
    if dom.is_interior(x):
        return PointClass.INTERIOR
    if any(dom.is_interior(y) for y in diagonal_neighbors(x)):
        return PointClass.BOUNDARY
    return PointClass.EXTERIOR

def boundary_set(dom):
    '''
    Enumerates the absorbing boundary of a finite domain, in lexicographic
    order. Boundary points all lie in the one-thick shell around the
    interior box; shell points with no interior diagonal neighbor (the edge
    midpoints of a width-one rectangle, say) are left out.

    Raises:
        UnsupportedDomain for infinite domains
    '''
    if not dom.finite:
        raise UnsupportedDomain(
                '%s domain has an infinite boundary' % dom.kind)
    ranges = [range(lo - 1, hi + 2) for lo, hi in dom.bounds]
    return [
        x for x in itertools.product(*ranges)
        if classify_point(dom, x) is PointClass.BOUNDARY]

def parity_compatible(x, src):
    '''
    True if the walk started at `src` can ever stand on `x`: every step moves
    every coordinate by one, so all coordinate differences share the parity
    of the number of steps taken.
    '''
    if len(x) != len(src):
        raise DimensionMismatch(
                'points %s and %s differ in dimension' % (tuple(x), tuple(src)))
    parities = set((xi - si) % 2 for xi, si in zip(x, src))
    return len(parities) <= 1
