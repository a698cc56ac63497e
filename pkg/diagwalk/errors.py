'''
diagwalk/errors.py - exceptions raised by diagwalk

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

class DiagwalkError(Exception):
    '''Base class for everything diagwalk raises on purpose.'''
    pass

class DimensionMismatch(DiagwalkError, ValueError):
    pass

class NotInterior(DiagwalkError, ValueError):
    '''A point that has to be interior to the domain is not.'''
    pass

class UnsupportedDomain(DiagwalkError, ValueError):
    '''The operation is not defined for this kind of domain.'''
    pass

class OutOfRange(DiagwalkError, ValueError):
    pass

class RecurrentLattice(DiagwalkError):
    '''
    The walk on the full lattice returns with probability one in this
    dimension, so expected visit counts diverge.
    '''
    pass

class TooLarge(DiagwalkError):
    pass
