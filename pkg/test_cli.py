#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行测试
Command Line Tests
"""

import sys
import os
import json
import subprocess

import pytest

# 添加src目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from main import EXIT_BUDGET, EXIT_OK, EXIT_UNSATISFIED, EXIT_USAGE, RunConfig, build_parser, parse_bases, run
from utils.config import config


@pytest.fixture(autouse=True)
def restore_config():
    saved_file = config.config_file
    saved = config.get_all()
    yield
    config.config_file = saved_file
    config.reset_to_default()
    config.update(saved)


RUN_SCRIPT = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'run.py')


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_parse_bases():
    assert parse_bases('2-5') == [2, 3, 4, 5]
    assert parse_bases('2,4,8') == [2, 4, 8]


def test_missing_command_is_usage_error(capsys):
    assert run([]) == EXIT_USAGE
    assert run(['construct']) == EXIT_USAGE
    assert run(['--help']) == EXIT_OK


def test_exponents(capsys):
    assert run(['exponents', '--n', '2', '--k', '1']) == EXIT_OK
    payload = _json(capsys)
    assert payload['beta'] == '7/8'
    assert payload['orthoplex_exponent'] == '3/4'


def test_exponents_iterate(capsys):
    assert run(['exponents', '--n', '2', '--k', '0', '--iterate', '--tol', '1e-9']) == EXIT_OK
    payload = _json(capsys)
    assert payload['converged'] is True
    assert payload['converged_at'] == 1


def test_exponents_table(capsys):
    assert run(['exponents', '--table', '2']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'n,k,beta_num,beta_den,converged_at'
    assert lines[1] == '1,0,1,2,1'
    assert len(lines) == 4


def test_construct_then_verify(tmp_path, capsys):
    b_path = tmp_path / 'B.txt'
    s_path = tmp_path / 'S.txt'
    code = run(['construct', '--shape', 'skeleton', '--n', '2', '--k', '0', '--p', '20',
                '--out-b', str(b_path), '--out-s', str(s_path)])
    assert code == EXIT_OK
    summary = _json(capsys)
    assert summary['sizeB'] == 3025
    assert summary['sizeS'] == 20

    assert run(['verify', '--mode', 'skeleton', '--k', '0', '--b', str(b_path), '--s', str(s_path)]) == EXIT_OK
    report = _json(capsys)
    assert report['mode'] == 'skeleton'
    assert report['satisfied'] is True
    assert len(report['witnesses']) == 20


def test_construct_with_verify_flag(capsys):
    assert run(['construct', '--shape', 'orthoplex', '--n', '2', '--p', '10', '--verify']) == EXIT_OK
    summary = _json(capsys)
    assert summary['scale'] == 2
    assert summary['satisfied'] is True


def test_verify_failure(tmp_path, capsys):
    b_path = tmp_path / 'B.txt'
    s_path = tmp_path / 'S.txt'
    b_path.write_text('-1 -1\n-1 1\n1 -1\n1 1\n', encoding='utf-8')
    s_path.write_text('0 0\n5 5\n', encoding='utf-8')
    assert run(['verify', '--mode', 'skeleton', '--b', str(b_path), '--s', str(s_path)]) == EXIT_UNSATISFIED
    assert _json(capsys)['failures'] == [[5, 5]]


def test_verify_dimension_mismatch(tmp_path, capsys):
    b_path = tmp_path / 'B.txt'
    s_path = tmp_path / 'S.txt'
    b_path.write_text('1 1\n', encoding='utf-8')
    s_path.write_text('0 0 0\n', encoding='utf-8')
    assert run(['verify', '--mode', 'skeleton', '--b', str(b_path), '--s', str(s_path)]) == EXIT_USAGE


def test_missing_file_is_usage_error(tmp_path):
    missing = str(tmp_path / 'none.txt')
    assert run(['verify', '--mode', 'orthoplex', '--b', missing, '--s', missing]) == EXIT_USAGE


def test_point_cap_exit_code(capsys):
    code = run(['--point-cap', '10', 'construct', '--shape', 'skeleton', '--n', '2', '--p', '20'])
    assert code == EXIT_BUDGET


def test_config_file_sets_point_cap(tmp_path, capsys):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'point_cap': 10}), encoding='utf-8')
    code = run(['--config', str(path), 'construct', '--shape', 'nl', '--n', '2', '--ell', '1', '--p', '5'])
    assert code == EXIT_BUDGET


def test_invalid_global_flag():
    assert run(['--threads', '0', 'exponents', '--n', '2']) == EXIT_USAGE


def test_oracle_min_cover(tmp_path, capsys):
    s_path = tmp_path / 'S.txt'
    s_path.write_text('0\n1\n2\n', encoding='utf-8')
    assert run(['oracle', 'min-cover', '--s', str(s_path), '--r-max', '3']) == EXIT_OK
    payload = _json(capsys)
    assert payload['min_size'] == 3
    assert payload['optimal'] is True
    assert payload['lower_bound'] == pytest.approx(3 ** 0.5)


def test_oracle_budget_prints_partial_result(tmp_path, capsys):
    s_path = tmp_path / 'S.txt'
    s_path.write_text('0\n1\n2\n3\n', encoding='utf-8')
    code = run(['--node-budget', '2', 'oracle', 'min-cover', '--s', str(s_path)])
    assert code == EXIT_BUDGET
    assert _json(capsys)['optimal'] is False


def test_oracle_sweep(capsys):
    assert run(['oracle', 'sweep', '--line', '4']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'size_s,min_size,r_max,nodes_explored'
    assert [line.split(',')[0] for line in lines[1:]] == ['1', '2', '3', '4']


def test_oracle_grid_sweep(capsys):
    assert run(['oracle', 'sweep', '--grid', '2', '--max-size', '2', '--r-max', '2']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    # 4 个单点子集加 6 个两点子集
    assert len(lines) == 1 + 4 + 6


def test_shadow_commands(tmp_path, capsys):
    assert run(['shadow', 'bounds', '--m', '5', '--b', '2', '--c', '1']) == EXIT_OK
    payload = _json(capsys)
    assert payload['kk'] == 4
    assert payload['cascade'] == [3, 2]

    assert run(['shadow', 'colex', '--m', '3', '--b', '2']) == EXIT_OK
    assert capsys.readouterr().out == '1 2\n1 3\n2 3\n'

    family = tmp_path / 'family.txt'
    family.write_text('1 2 3\n2 3 4\n', encoding='utf-8')
    assert run(['shadow', 'exact', '--family', str(family), '--c', '1']) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ['1 2', '1 3', '2 3', '2 4', '3 4']

    assert run(['shadow', 'check', '--ground', '4', '--arity', '2']) == EXIT_OK
    assert _json(capsys)['violations'] == 0


def test_digits_commands(tmp_path, capsys):
    assert run(['digits', 'dump', '--i', '2', '--n', '1']) == EXIT_OK
    assert capsys.readouterr().out.split() == ['-4', '-2', '-1', '0', '1', '2', '4']

    assert run(['digits', 'radius', '--i', '2', '--x', '4', '1']) == EXIT_OK
    payload = _json(capsys)
    assert payload['radius'] == 5
    assert payload['verified'] is True

    assert run(['digits', 'radius', '--p', '3', '--x', '17']) == EXIT_OK
    assert _json(capsys)['verified'] is True

    assert run(['digits', 'radius', '--i', '2', '--x', '0']) == EXIT_USAGE

    values = tmp_path / 'values.txt'
    values.write_text('0\n5\n10\n', encoding='utf-8')
    assert run(['digits', 'cover', '--values', str(values), '--r', '4']) == EXIT_OK
    assert _json(capsys)['count'] == 3

    assert run(['digits', 'cover', '--p', '3', '--n', '1']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'j,R,count,envelope,in_domain'
    assert len(lines) == 4


def test_cantor_commands(tmp_path, capsys):
    assert run(['cantor', 'stages', '--n', '1', '--t', '1', '--depth', '3']) == EXIT_OK
    payload = _json(capsys)
    assert payload['T']['nested'] is True
    assert payload['A']['nested'] is False

    out = tmp_path / 'sum.txt'
    assert run(['--out', str(out), 'cantor', 'sum', '--n', '1', '--t', '1', '--depth', '3']) == EXIT_OK
    assert len(out.read_text(encoding='utf-8').splitlines()) == 360

    assert run(['cantor', 'boxcount', '--points', str(out), '--scales', '1/4', '1/36', '1/576']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == ['scale_num,scale_den,count', '1,4,3', '1,36,24', '1,576,360']

    assert run(['cantor', 'fit', '--points', str(out), '--scales', '1/4', '1/36', '1/576']) == EXIT_OK
    assert _json(capsys)['slope'] == pytest.approx(0.9639, abs=1e-3)

    assert run(['cantor', 'compare', '--p', '2', '--n', '1']) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ['R,cover,boxes,within_factor_two', '1,5,7,True', '4,2,3,True']


def test_report(tmp_path, capsys):
    slopes = tmp_path / 'slopes.json'
    code = run(['report', '--shape', 'skeleton', '--n', '2', '--k', '0', '--bases', '2-4', '--json', str(slopes)])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'shape,n,k,i,size_s,size_b'
    assert lines[1] == 'skeleton,2,0,2,225,3025'
    assert len(lines) == 4
    payload = json.loads(slopes.read_text(encoding='utf-8'))
    assert payload[0]['bases'] == [2, 3, 4]


def test_verify_nl_with_empty_projection_file(tmp_path, capsys):
    a_path = tmp_path / 'A.txt'
    s_path = tmp_path / 'S.txt'
    a_path.write_text('# 空集\n', encoding='utf-8')
    s_path.write_text('1 2\n', encoding='utf-8')
    assert run(['verify', '--mode', 'nl', '--b', str(a_path), '--s', str(s_path)]) == EXIT_UNSATISFIED
    report = _json(capsys)
    assert report['satisfied'] is False
    assert report['failures'] == [[1, 2]]


def test_shadow_bounds_with_large_m(capsys):
    assert run(['shadow', 'bounds', '--m', str(10 ** 8), '--b', '1']) == EXIT_USAGE
    assert run(['shadow', 'bounds', '--m', str(10 ** 8), '--b', '2', '--c', '1']) == EXIT_OK
    payload = _json(capsys)
    assert payload['cascade'] == [14142, 8989]
    assert payload['kk'] == 14143


def test_save_config_round_trip(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv('SKELETAL_THREADS', raising=False)
    path = tmp_path / 'saved.json'
    code = run(['--point-cap', '10', '--threads', '2', '--save-config', str(path), 'exponents', '--n', '2'])
    assert code == EXIT_OK
    saved = json.loads(path.read_text(encoding='utf-8'))
    assert saved['point_cap'] == 10
    assert saved['threads'] == 2
    assert saved['node_budget'] == config.get('node_budget')
    capsys.readouterr()

    config.reset_to_default()
    code = run(['--config', str(path), 'construct', '--shape', 'skeleton', '--n', '2', '--p', '20'])
    assert code == EXIT_BUDGET


def test_threads_environment_variable(monkeypatch):
    config.update({'threads': 2})
    monkeypatch.setenv('SKELETAL_THREADS', '4')
    assert config.threads() == 4
    args = build_parser().parse_args(['exponents', '--n', '2'])
    assert RunConfig.from_args(args).threads == 4
    # 命令行参数优先于环境变量
    args = build_parser().parse_args(['--threads', '3', 'exponents', '--n', '2'])
    assert RunConfig.from_args(args).threads == 3
    monkeypatch.setenv('SKELETAL_THREADS', 'many')
    assert config.threads() == 2


def _run_with_threads(argv, threads):
    env = dict(os.environ, SKELETAL_THREADS=str(threads))
    return subprocess.run([sys.executable, RUN_SCRIPT] + argv, capture_output=True, env=env, check=False)


@pytest.mark.parametrize('argv', [
    ['construct', '--shape', 'skeleton', '--n', '2', '--k', '1', '--p', '20', '--verify'],
    ['oracle', 'sweep', '--line', '6'],
    ['shadow', 'check', '--ground', '4', '--arity', '2'],
    ['cantor', 'compare', '--p', '3', '--n', '1'],
])
def test_output_is_identical_across_thread_counts(argv):
    single = _run_with_threads(argv, 1)
    parallel = _run_with_threads(argv, 4)
    assert single.returncode == EXIT_OK, single.stderr
    assert parallel.returncode == EXIT_OK, parallel.stderr
    assert single.stdout
    assert single.stdout == parallel.stdout


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
