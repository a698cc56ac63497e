'''
test_walk_model.py - tests for diagonal lattice geometry

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

import logging
import sys
import numpy as np
import pytest
from diagwalk import DimensionMismatch, UnsupportedDomain
from diagwalk.walk_model import (
        DomainSpec, PointClass, boundary_set, check_dimension, classify_point,
        diagonal_neighbors, parity_compatible)

logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format=(
            '%(asctime)s %(process)d %(levelname)s %(threadName)s '
            '%(name)s.%(funcName)s(%(filename)s:%(lineno)d) %(message)s'))

def test_diagonal_neighbors():
    assert diagonal_neighbors((0, 0)) == [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    assert diagonal_neighbors((5,)) == [(6,), (4,)]
    neighbors = diagonal_neighbors((1, 1, 1))
    assert len(neighbors) == 8
    assert len(set(neighbors)) == 8
    assert neighbors[0] == (2, 2, 2)
    assert neighbors[-1] == (0, 0, 0)

def test_domain_constructors():
    assert DomainSpec.rectangle(2, 3) == ('rect', (2, 3))
    assert DomainSpec.semi_strip(4).sizes == (4,)
    assert DomainSpec.half_plane().sizes == ()
    assert DomainSpec.block(1, 2, 3).dim == 3
    assert DomainSpec.full_lattice(5).dim == 5
    assert DomainSpec.strip(2).dim == 2
    assert str(DomainSpec.rectangle(2, 2)) == 'rect(2,2)'
    assert str(DomainSpec.half_plane()) == 'halfplane()'

    with pytest.raises(ValueError):
        DomainSpec.rectangle(0, 2)
    with pytest.raises(ValueError):
        DomainSpec.block(1, 2, -3)
    with pytest.raises(ValueError):
        DomainSpec.full_lattice(1)
    with pytest.raises(ValueError):
        DomainSpec.strip(1.5)

def test_parse():
    assert DomainSpec.parse('rect', [3, 4]) == DomainSpec.rectangle(3, 4)
    assert DomainSpec.parse('halfplane') == DomainSpec.half_plane()
    assert DomainSpec.parse('lattice', (3,)) == DomainSpec.full_lattice(3)
    with pytest.raises(ValueError):
        DomainSpec.parse('torus', [3])
    with pytest.raises(ValueError):
        DomainSpec.parse('rect', [3])

def test_bounds_and_interior():
    assert DomainSpec.rectangle(2, 3).bounds == ((1, 2), (1, 3))
    assert DomainSpec.semi_strip(2).bounds == ((1, 2), (1, None))
    assert DomainSpec.half_plane().bounds == ((1, None), (None, None))

    strip = DomainSpec.strip(3)
    assert strip.is_interior((2, -1000))
    assert not strip.is_interior((0, 5))
    assert DomainSpec.half_plane().is_interior((7, -3))
    assert not DomainSpec.half_plane().is_interior((0, 0))
    assert DomainSpec.full_lattice(4).is_interior((-9, 0, 3, 1))

    assert list(DomainSpec.rectangle(2, 2).interior_points()) == [
            (1, 1), (1, 2), (2, 1), (2, 2)]
    assert len(list(DomainSpec.block(2, 3, 4).interior_points())) == 24
    with pytest.raises(UnsupportedDomain):
        DomainSpec.strip(2).interior_points()

def test_interior_mask():
    dom = DomainSpec.semi_strip(2)
    coords = np.array([[1, 1], [2, 50], [0, 3], [3, 3], [1, 0]])
    assert dom.interior_mask(coords).tolist() == [True, True, False, False, False]
    dom = DomainSpec.full_lattice(3)
    assert dom.interior_mask(np.zeros((4, 3), dtype=int)).all()

def test_classify_point():
    dom = DomainSpec.rectangle(2, 2)
    assert classify_point(dom, (1, 1)) is PointClass.INTERIOR
    assert classify_point(dom, (0, 0)) is PointClass.BOUNDARY
    assert classify_point(dom, (-1, 0)) is PointClass.EXTERIOR
    assert classify_point(dom, (3, 3)) is PointClass.BOUNDARY
    assert classify_point(DomainSpec.full_lattice(3), (100, -5, 2)) is PointClass.INTERIOR
    assert classify_point(DomainSpec.half_plane(), (0, 17)) is PointClass.BOUNDARY
    assert classify_point(DomainSpec.half_plane(), (-1, 17)) is PointClass.EXTERIOR

    with pytest.raises(DimensionMismatch):
        classify_point(dom, (1, 1, 1))
    # also a ValueError, for callers that only know about those
    with pytest.raises(ValueError):
        check_dimension(DomainSpec.block(1, 1, 1), (1, 1))

def test_boundary_set():
    assert boundary_set(DomainSpec.rectangle(1, 1)) == [
            (0, 0), (0, 2), (2, 0), (2, 2)]

    boundary = boundary_set(DomainSpec.rectangle(2, 2))
    assert len(boundary) == 12
    assert len(set(boundary)) == 12
    expected = set(
            [(p, q) for p in (0, 3) for q in range(4)]
            + [(p, q) for p in range(4) for q in (0, 3)])
    assert set(boundary) == expected

    corners = boundary_set(DomainSpec.block(1, 1, 1))
    assert len(corners) == 8
    assert all(c in (0, 2) for point in corners for c in point)

    with pytest.raises(UnsupportedDomain):
        boundary_set(DomainSpec.semi_strip(2))

def test_boundary_members_classify_as_boundary():
    for dom in (DomainSpec.rectangle(3, 5), DomainSpec.block(2, 3, 1)):
        for point in boundary_set(dom):
            assert classify_point(dom, point) is PointClass.BOUNDARY
        for x in dom.interior_points():
            for y in diagonal_neighbors(x):
                assert classify_point(dom, y) is not PointClass.EXTERIOR

def test_parity_compatible():
    assert parity_compatible((2, 2), (1, 1))
    assert not parity_compatible((2, 1), (1, 1))
    assert not parity_compatible((1, 1, 0), (0, 0, 0))
    assert parity_compatible((3, -1, 5), (0, 0, 0))
    assert parity_compatible((4, 7), (4, 7))
    assert parity_compatible((5,), (2,))
    for x, y in [((1, 2), (3, 5)), ((0, 0), (2, 4)), ((1, 1, 2), (0, 0, 0))]:
        assert parity_compatible(x, y) == parity_compatible(y, x)
    with pytest.raises(DimensionMismatch):
        parity_compatible((1, 1), (1, 1, 1))
