#!/usr/bin/env python
'''
diagwalk/cli.py - diagwalk command line tool

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

import os, sys
import argparse
import collections
import csv
import json
import logging
import time
import diagwalk
from diagwalk import checks, oracles, quadrature_green, series_green
from diagwalk.walk_model import DomainSpec, check_dimension

LOG_FORMAT = (
        '%(asctime)s %(process)d %(levelname)s %(threadName)s '
        '%(name)s.%(funcName)s(%(filename)s:%(lineno)d) %(message)s')

class UsageError(Exception):
    pass

class ArgumentParser(argparse.ArgumentParser):
    '''Reports usage errors on a single line.'''
    def error(self, message):
        self.exit(2, '%s: error: %s\n' % (self.prog, message))

DOMAIN_SIZES = {
    DomainSpec.RECT: ('m', 'n'),
    DomainSpec.SEMISTRIP: ('m',),
    DomainSpec.STRIP: ('m',),
    DomainSpec.HALFPLANE: (),
    DomainSpec.BLOCK: ('l', 'm', 'n'),
    DomainSpec.LATTICE: ('dim',),
}

def _domain(args):
    if args.domain is None:
        raise UsageError('--domain is required')
    names = DOMAIN_SIZES[args.domain]
    missing = ['--%s' % name for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError('--domain %s needs %s' % (args.domain, ' '.join(missing)))
    return DomainSpec.parse(args.domain, [getattr(args, name) for name in names])

def _require(args, *names):
    missing = ['--%s' % name.replace('_', '-') for name in names
               if getattr(args, name) is None]
    if missing:
        raise UsageError('%s %s required' % (
            ' and '.join(missing), 'is' if len(missing) == 1 else 'are'))

def _spec(args):
    return quadrature_green.QuadratureSpec(args.tol, args.tol)

def _mc_config(args):
    return oracles.McConfig(
            args.trials, seed=args.seed, max_steps=args.max_steps,
            block_size=args.block_size)

def _request(args, *fields):
    request = collections.OrderedDict([('command', args.command)])
    for field in fields:
        value = getattr(args, field)
        if field == 'domain' and value is not None:
            value = str(_domain(args))
        if isinstance(value, tuple):
            value = list(value)
        request[field] = value
    return request

def _record(request, value, error=None, error_name='error_estimate',
            **metadata):
    record = collections.OrderedDict()
    record['request'] = request
    record['value'] = value
    if error is not None:
        record[error_name] = error
    record['metadata'] = collections.OrderedDict(sorted(metadata.items()))
    return record

def _quadrature_record(request, quad):
    return _record(
            request, quad.value, quad.error_estimate,
            evaluations=quad.evaluations, converged=quad.converged)

def _mc_record(request, estimate):
    return _record(
            request, estimate.mean, estimate.std_error, 'std_error',
            trials=estimate.trials, truncated_trials=estimate.truncated_trials)

def green(args):
    '''
    Series sums for rectangles, strips and blocks; quadrature for the
    half-plane and the full lattice.
    '''
    _require(args, 'source', 'target')
    dom = _domain(args)
    request = _request(args, 'domain', 'source', 'target')
    check_dimension(dom, args.source)
    check_dimension(dom, args.target)
    if dom.kind == DomainSpec.HALFPLANE:
        request['tol'] = args.tol
        (a, b), (p, q) = args.source, args.target
        quad = quadrature_green.halfplane_green(a, p, q - b, _spec(args))
        return _quadrature_record(request, quad)
    if dom.kind == DomainSpec.LATTICE:
        request['tol'] = args.tol
        offset = tuple(t - s for s, t in zip(args.source, args.target))
        quad = quadrature_green.lattice_green_nd(offset, _spec(args))
        return _quadrature_record(request, quad)
    value = series_green.green(dom, args.source, args.target)
    return _record(request, value, method='series')

def absorb(args):
    _require(args, 'source')
    dom = _domain(args)
    result = series_green.absorption_probs(dom, args.source)
    record = _record(
            _request(args, 'domain', 'source'), result.total(),
            points=len(result.entries))
    record['absorption'] = [
        collections.OrderedDict([('point', list(point)), ('probability', p)])
        for point, p in result.entries]
    return record

def return_prob(args):
    '''
    With --domain, the finite-domain return probability from --source;
    otherwise the full-lattice constant for --style and --dim.
    '''
    if args.domain is not None:
        _require(args, 'source')
        dom = _domain(args)
        value = series_green.return_prob_finite(dom, args.source)
        return _record(_request(args, 'domain', 'source'), value,
                       method='series')
    request = _request(args, 'style', 'dim', 'method', 'tol')
    dim = 3 if args.dim is None else args.dim
    request['dim'] = dim
    if args.tol is not None:
        spec = _spec(args)
    elif args.style == quadrature_green.DIAGONAL and dim >= 5:
        spec = quadrature_green.LOOSE_SPEC
    else:
        spec = quadrature_green.QuadratureSpec()
    request['tol'] = spec.abs_tol
    if args.method == 'watson':
        result = quadrature_green.watson_integral(args.style, dim, spec)
    else:
        result = quadrature_green.return_constant(args.style, dim, spec)
    quad = result.quadrature
    # first-order propagation through 1 - 1/F
    error = quad.error_estimate / (result.constant * result.constant)
    return _record(
            request, result.p_return, error, constant=result.constant,
            constant_error_estimate=quad.error_estimate,
            evaluations=quad.evaluations, converged=quad.converged)

def oracle(args):
    method = args.method
    if method == 'return':
        if args.dim is None:
            raise UsageError('--method return needs --dim')
        request = _request(args, 'method', 'dim', 'trials', 'seed',
                           'max_steps', 'block_size')
        return _mc_record(request, oracles.mc_return_prob(args.dim, _mc_config(args)))
    dom = _domain(args)
    if method == 'absorption-time':
        _require(args, 'source')
        value = oracles.expected_absorption_time(dom, args.source)
        return _record(_request(args, 'method', 'domain', 'source'), value)
    _require(args, 'source', 'target')
    check_dimension(dom, args.target)
    if method == 'fundamental':
        row = oracles.fundamental_matrix_green(dom, args.source)
        if args.target not in row:
            raise diagwalk.NotInterior(
                    'target %s is not interior to %s' % (args.target, dom))
        return _record(
                _request(args, 'method', 'domain', 'source', 'target'),
                row[args.target], states=len(row))
    request = _request(args, 'method', 'domain', 'source', 'target', 'trials',
                       'seed', 'max_steps', 'block_size')
    estimate = oracles.mc_expected_departures(
            dom, args.source, args.target, _mc_config(args))
    return _mc_record(request, estimate)

def check(args):
    domains = None if args.domain is None else [_domain(args)]
    results = checks.run_checks(domains, _spec(args))
    failed = sum(1 for r in results if not r.passed)
    record = _record(
            _request(args, 'domain', 'tol'), failed == 0,
            checks=len(results), failed=failed)
    record['checks'] = [
        collections.OrderedDict(zip(r._fields, r)) for r in results]
    return record

def _write_csv(record, out):
    writer = csv.writer(out, lineterminator='\n')
    if 'absorption' in record:
        writer.writerow(['point', 'probability'])
        for row in record['absorption']:
            writer.writerow([
                ','.join(str(c) for c in row['point']),
                repr(row['probability'])])
    else:
        writer.writerow(checks.CheckResult._fields)
        for row in record['checks']:
            writer.writerow([
                repr(v) if isinstance(v, float) else v for v in row.values()])

def _add_domain_arguments(parser, required_points=('source', 'target')):
    parser.add_argument(
            '--domain', choices=DomainSpec.KINDS,
            help='domain kind')
    for name in ('l', 'm', 'n'):
        parser.add_argument(
                '--%s' % name, type=int, help='domain size along one axis')
    parser.add_argument(
            '--dim', type=int, help='lattice dimension')
    for name in required_points:
        parser.add_argument(
                '--%s' % name, type=diagwalk.parse_point, metavar='X,Y[,Z...]',
                help='%s point, comma-separated integers' % name)

def _add_common_arguments(parser, formats=('json',)):
    parser.add_argument(
            '--format', choices=formats, default='json',
            help='output format (default json)')
    parser.add_argument(
            '--no-timing', dest='timing', action='store_false',
            help='leave wall_time_ms out of the output')
    parser.add_argument(
        '-v', '--verbose', dest='log_level', action='store_const',
        default=logging.WARNING, const=logging.DEBUG, help=(
                'verbose logging'))

def _add_mc_arguments(parser):
    parser.add_argument(
            '--trials', type=int, default=100000,
            help='Monte Carlo trials (default 100000)')
    parser.add_argument(
            '--seed', type=int, default=0, help='random seed (default 0)')
    parser.add_argument(
            '--max-steps', type=int, default=10**6,
            help='cutoff on the length of each walk (default 1000000)')
    parser.add_argument(
            '--block-size', type=int, default=4096,
            help='walks per random stream (default 4096)')

def build_parser(prog):
    arg_parser = ArgumentParser(
            prog=prog, description=(
                'diagwalk: expected visits, absorption and return '
                'probabilities of the diagonal random walk'))
    subparsers = arg_parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    parser = subparsers.add_parser(
            'green', help="expected departures from --target starting at --source")
    _add_domain_arguments(parser)
    parser.add_argument('--tol', type=float, default=1e-8,
                        help='quadrature tolerance (default 1e-8)')
    _add_common_arguments(parser)
    parser.set_defaults(func=green)

    parser = subparsers.add_parser(
            'absorb', help='absorption probability of every boundary point')
    _add_domain_arguments(parser, ('source',))
    _add_common_arguments(parser, ('json', 'csv'))
    parser.set_defaults(func=absorb)

    parser = subparsers.add_parser(
            'return-prob', help='probability of returning to the start')
    _add_domain_arguments(parser, ('source',))
    parser.add_argument(
            '--style', choices=(quadrature_green.DIAGONAL,
                                quadrature_green.REGULAR),
            default=quadrature_green.DIAGONAL, help='lattice steps')
    parser.add_argument(
            '--method', choices=('integral', 'watson'), default='integral',
            help='reduced integral or full Watson integral')
    parser.add_argument(
            '--tol', type=float, default=None,
            help='quadrature tolerance (default 1e-8, 1e-5 from dim 5)')
    _add_common_arguments(parser)
    parser.set_defaults(func=return_prob)

    parser = subparsers.add_parser(
            'oracle', help='independent reference computations')
    parser.add_argument(
            '--method', required=True,
            choices=('fundamental', 'montecarlo', 'absorption-time', 'return'))
    _add_domain_arguments(parser)
    _add_mc_arguments(parser)
    _add_common_arguments(parser)
    parser.set_defaults(func=oracle)

    parser = subparsers.add_parser(
            'check', help='run the invariant suite')
    _add_domain_arguments(parser, ())
    parser.add_argument('--tol', type=float, default=1e-8,
                        help='quadrature tolerance (default 1e-8)')
    _add_common_arguments(parser, ('json', 'csv'))
    parser.set_defaults(func=check)
    return arg_parser

def main(argv=None):
    '''
    Runs one diagwalk subcommand and writes its result to stdout.

    Returns:
        0 on success, 1 if the computation failed (or checks failed), 2 on
        a usage error; argparse errors exit with 2 directly
    '''
    argv = argv or sys.argv
    prog = os.path.basename(argv[0])
    arg_parser = build_parser(prog)
    args = arg_parser.parse_args(argv[1:])
    logging.basicConfig(
            stream=sys.stderr, level=args.log_level, format=LOG_FORMAT)

    start = time.time()
    try:
        record = args.func(args)
    except (UsageError, ValueError) as e:
        sys.stderr.write('%s: error: %s\n' % (prog, e))
        return 2
    except diagwalk.DiagwalkError as e:
        sys.stderr.write('%s: error: %s\n' % (prog, e))
        return 1
    if args.timing:
        record['metadata']['wall_time_ms'] = 1000.0 * (time.time() - start)
    logging.getLogger('diagwalk.cli').info(
            '%s: value %r', args.command, record['value'])

    if args.format == 'csv':
        _write_csv(record, sys.stdout)
    else:
        sys.stdout.write(json.dumps(record, indent=2))
        sys.stdout.write('\n')
    if args.command == 'check' and not record['value']:
        return 1
    return 0
