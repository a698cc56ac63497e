'''
diagwalk/__init__.py - Green's functions, absorption and return probabilities
of random walks that step diagonally on the integer lattice

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

from diagwalk.errors import (
        DiagwalkError, DimensionMismatch, NotInterior, OutOfRange,
        RecurrentLattice, TooLarge, UnsupportedDomain)
from diagwalk.walk_model import (
        DomainSpec, PointClass, boundary_set, classify_point,
        diagonal_neighbors, parity_compatible)
from diagwalk.dispersion import (
        BranchKind, DispersionBranch, solve_branch, term_rect, term_strip)
from diagwalk.series_green import (
        AbsorptionMap, absorption_probs, block_green, green, rect_green,
        return_prob_finite, semistrip_green, strip_green)
from diagwalk.quadrature_green import (
        QuadratureResult, QuadratureSpec, halfplane_green, integrate_adaptive,
        lattice_green_nd, return_constant, watson_integral)
from diagwalk.oracles import (
        McConfig, McEstimate, fundamental_matrix_green, mc_expected_departures,
        mc_return_prob)

__all__ = [
    'DiagwalkError', 'DimensionMismatch', 'NotInterior', 'OutOfRange',
    'RecurrentLattice', 'TooLarge', 'UnsupportedDomain',
    'DomainSpec', 'PointClass', 'boundary_set', 'classify_point',
    'diagonal_neighbors', 'parity_compatible',
    'BranchKind', 'DispersionBranch', 'solve_branch', 'term_rect', 'term_strip',
    'AbsorptionMap', 'absorption_probs', 'block_green', 'green', 'rect_green',
    'return_prob_finite', 'semistrip_green', 'strip_green',
    'QuadratureResult', 'QuadratureSpec', 'halfplane_green',
    'integrate_adaptive', 'lattice_green_nd', 'return_constant',
    'watson_integral',
    'McConfig', 'McEstimate', 'fundamental_matrix_green',
    'mc_expected_departures', 'mc_return_prob', 'parse_point']

def parse_point(s):
    '''
    Parses a lattice point written as comma-separated integers, like "1,-2,3".

    Returns:
        tuple of ints

    Raises:
        ValueError if `s` is empty or any coordinate is not an integer
    '''
    fields = [f.strip() for f in s.split(',')]
    if '' in fields:
        raise ValueError('malformed lattice point %r' % (s,))
    try:
        return tuple(int(f) for f in fields)
    except ValueError:
        raise ValueError('malformed lattice point %r' % (s,))
