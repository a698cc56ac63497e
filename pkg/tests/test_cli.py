'''
test_cli.py - tests for the diagwalk command line tool

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

import json
import logging
import math
import sys
import pytest
import diagwalk.cli

logging.basicConfig(stream=sys.stderr, level=logging.INFO,
        format="%(asctime)s %(process)d %(levelname)s %(threadName)s %(name)s.%(funcName)s(%(filename)s:%(lineno)d) %(message)s")

def run(capsys, *args):
    status = diagwalk.cli.main(['diagwalk'] + list(args))
    out, err = capsys.readouterr()
    return status, out, err

def test_green(capsys):
    status, out, err = run(
            capsys, 'green', '--domain', 'rect', '--m', '2', '--n', '2',
            '--source', '1,1', '--target', '1,1')
    assert status == 0
    record = json.loads(out)
    assert record['value'] == pytest.approx(16 / 15, abs=1e-12)
    assert record['request']['domain'] == 'rect(2,2)'
    assert record['request']['source'] == [1, 1]
    assert record['metadata']['method'] == 'series'
    assert record['metadata']['wall_time_ms'] >= 0

def test_green_strip_and_quadrature(capsys):
    status, out, err = run(
            capsys, 'green', '--domain', 'strip', '--m', '2',
            '--source', '1,5', '--target', '1,5', '--no-timing')
    assert status == 0
    assert json.loads(out)['value'] == pytest.approx(2 / math.sqrt(3), abs=1e-12)

    status, out, err = run(
            capsys, 'green', '--domain', 'halfplane', '--source', '1,0',
            '--target', '2,0', '--no-timing')
    assert status == 0
    record = json.loads(out)
    assert record['value'] == 0.0
    assert record['error_estimate'] == 0.0
    assert record['metadata']['converged'] is True
    assert record['request']['tol'] == 1e-8

def test_absorb_csv(capsys):
    status, out, err = run(
            capsys, 'absorb', '--domain', 'rect', '--m', '2', '--n', '2',
            '--source', '1,1', '--format', 'csv')
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == 'point,probability'
    assert len(lines) == 13
    assert lines[1].startswith('"0,0",')
    total = math.fsum(float(line.rsplit(',', 1)[1]) for line in lines[1:])
    assert total == pytest.approx(1.0, abs=1e-12)

def test_absorb_json(capsys):
    status, out, err = run(
            capsys, 'absorb', '--domain', 'rect', '--m', '1', '--n', '1',
            '--source', '1,1', '--no-timing')
    assert status == 0
    record = json.loads(out)
    assert [entry['point'] for entry in record['absorption']] == [
            [0, 0], [0, 2], [2, 0], [2, 2]]
    for entry in record['absorption']:
        assert entry['probability'] == pytest.approx(0.25, abs=1e-15)
    assert record['value'] == pytest.approx(1.0, abs=1e-15)

def test_return_prob_recurrent(capsys):
    status, out, err = run(
            capsys, 'return-prob', '--style', 'diagonal', '--dim', '2')
    assert status == 1
    assert out == ''
    assert 'recurrent' in err
    assert len(err.strip().splitlines()) == 1

def test_return_prob_finite_domain(capsys):
    status, out, err = run(
            capsys, 'return-prob', '--domain', 'rect', '--m', '2', '--n', '2',
            '--source', '1,1', '--no-timing')
    assert status == 0
    assert json.loads(out)['value'] == pytest.approx(1 / 16, abs=1e-12)

def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exit:
        diagwalk.cli.main(['diagwalk', 'green', '--bogus'])
    assert exit.value.code == 2
    with pytest.raises(SystemExit) as exit:
        diagwalk.cli.main(['diagwalk', 'green', '--source', '1,x'])
    assert exit.value.code == 2
    capsys.readouterr()

    status, out, err = run(capsys, 'green', '--domain', 'rect', '--m', '2')
    assert status == 2
    assert 'required' in err
    status, out, err = run(
            capsys, 'green', '--domain', 'rect', '--m', '2', '--source', '1,1',
            '--target', '1,1')
    assert status == 2
    assert '--n' in err
    # dimension mismatch
    status, out, err = run(
            capsys, 'green', '--domain', 'rect', '--m', '2', '--n', '2',
            '--source', '1,1,1', '--target', '1,1')
    assert status == 2
    # source on the boundary
    status, out, err = run(
            capsys, 'green', '--domain', 'rect', '--m', '2', '--n', '2',
            '--source', '0,1', '--target', '1,1')
    assert status == 2
    status, out, err = run(
            capsys, 'absorb', '--domain', 'strip', '--m', '2', '--source', '1,0')
    assert status == 2
    assert out == ''

def test_threads_variable(capsys, monkeypatch):
    monkeypatch.setenv('DIAGWALK_THREADS', 'lots')
    status, out, err = run(
            capsys, 'oracle', '--method', 'montecarlo', '--domain', 'rect',
            '--m', '2', '--n', '2', '--source', '1,1', '--target', '1,1',
            '--trials', '10')
    assert status == 2
    assert 'DIAGWALK_THREADS' in err

def test_no_timing_is_reproducible(capsys, monkeypatch):
    args = ['oracle', '--method', 'montecarlo', '--domain', 'strip',
            '--m', '2', '--source', '1,0', '--target', '1,0',
            '--trials', '3000', '--seed', '42', '--block-size', '500',
            '--no-timing']
    status, first, err = run(capsys, *args)
    assert status == 0
    monkeypatch.setenv('DIAGWALK_THREADS', '3')
    status, second, err = run(capsys, *args)
    assert status == 0
    assert first == second
    record = json.loads(first)
    assert 'wall_time_ms' not in record['metadata']
    assert record['metadata']['trials'] == 3000
    assert record['request']['seed'] == 42
    assert abs(record['value'] - 2 / math.sqrt(3)) <= 4 * record['std_error']

def test_oracle_methods(capsys):
    status, out, err = run(
            capsys, 'oracle', '--method', 'fundamental', '--domain', 'rect',
            '--m', '2', '--n', '2', '--source', '1,1', '--target', '2,2')
    assert status == 0
    record = json.loads(out)
    assert record['value'] == pytest.approx(4 / 15, abs=1e-12)
    assert record['metadata']['states'] == 4

    status, out, err = run(
            capsys, 'oracle', '--method', 'absorption-time', '--domain',
            'rect', '--m', '2', '--n', '2', '--source', '1,1')
    assert status == 0
    assert json.loads(out)['value'] == pytest.approx(4 / 3, abs=1e-12)

    status, out, err = run(
            capsys, 'oracle', '--method', 'return', '--dim', '3',
            '--trials', '2000', '--max-steps', '100')
    assert status == 0
    record = json.loads(out)
    assert 0.1 < record['value'] < 0.282229985 + 4 * record['std_error']
    assert record['metadata']['truncated_trials'] > 0

    status, out, err = run(
            capsys, 'oracle', '--method', 'fundamental', '--domain', 'rect',
            '--m', '3', '--n', '3', '--source', '1,1', '--target', '0,0')
    assert status == 2

    status, out, err = run(capsys, 'oracle', '--method', 'return', '--dim', '2')
    assert status == 1

def test_check(capsys):
    status, out, err = run(
            capsys, 'check', '--domain', 'rect', '--m', '2', '--n', '2',
            '--no-timing')
    assert status == 0
    record = json.loads(out)
    assert record['value'] is True
    assert record['metadata']['failed'] == 0
    names = [c['name'] for c in record['checks']]
    assert 'residual' in names
    assert 'oracle agreement' in names

    status, out, err = run(
            capsys, 'check', '--domain', 'strip', '--m', '2', '--format', 'csv')
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == 'name,domain,passed,worst,tolerance'
    assert all(',True,' in line for line in lines[1:])

    status, out, err = run(capsys, 'check', '--domain', 'lattice', '--dim', '4')
    assert status == 2

def test_return_prob_echoes_tolerance_used(capsys):
    status, out, err = run(
            capsys, 'return-prob', '--style', 'diagonal', '--dim', '5',
            '--no-timing')
    assert status == 0
    record = json.loads(out)
    assert record['request']['tol'] == 1e-5
    assert record['request']['dim'] == 5
    assert 0.0 < record['value'] < 0.282229985

    status, out, err = run(
            capsys, 'return-prob', '--style', 'diagonal', '--dim', '3',
            '--tol', '1e-6', '--no-timing')
    assert status == 0
    assert json.loads(out)['request']['tol'] == 1e-6

def test_infinite_domain_diagnostic(capsys):
    status, out, err = run(
            capsys, 'absorb', '--domain', 'strip', '--m', '2', '--source', '1,0')
    assert status == 2
    assert out == ''
    assert err.strip().splitlines() == [
            'diagwalk: error: strip(2) is not a finite domain']
