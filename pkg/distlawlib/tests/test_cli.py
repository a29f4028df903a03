"""
Copyright 2021 Brain Electrophysiology Laboratory Company LLC

Licensed under the ApacheLicense, Version 2.0(the "License");
you may not use this module except in compliance with the License.
You may obtain a copy of the License at:

http: // www.apache.org / licenses / LICENSE - 2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
ANY KIND, either express or implied.
"""
import json
import pytest
from argparse import ArgumentTypeError
from os import listdir
from os.path import join

import pytz
from sympy import QQ

from .. import cli
from ..classify import IsoCheck
from ..cli import (ConfigError, OutputFormat, PositiveInt, RationalPoint,
                   RunConfig, SystemName, TimeZone, main, parse_config, run)


def test_system_name() -> None:
    """Test system names are normalized and checked"""
    assert SystemName(' COM-LIE ') == 'com-lie'
    assert SystemName('nlie2') == 'nlie2'
    with pytest.raises(ArgumentTypeError) as exc_info:
        SystemName('poisson')
    message = 'Unknown system "poisson". Options: [\'com-lie\', \'nlie2\']'
    assert str(exc_info.value) == message


@pytest.mark.parametrize('text,point', [
    ('1,0,-3/2', (QQ(1), QQ(0), QQ(-3, 2))),
    (' 2 , 4/6 ', (QQ(2), QQ(2, 3))),
    ('0', (QQ(0),)),
])
def test_rational_point(text: str, point: tuple) -> None:
    """Test points are parsed into exact rationals"""
    assert RationalPoint(text) == point


@pytest.mark.parametrize('text,message', [
    ('', 'No coordinates specified'),
    ('1,0.5,0', "Not a rational number: '0.5'"),
    ('1/0,0,0', "Zero denominator in rational: '1/0'"),
])
def test_rational_point_error(text: str, message: str) -> None:
    """Test malformed points are rejected"""
    with pytest.raises(ArgumentTypeError) as exc_info:
        RationalPoint(text)
    assert str(exc_info.value) == message


def test_output_format() -> None:
    """Test output formats are normalized and checked"""
    assert OutputFormat('Markdown') == 'markdown'
    with pytest.raises(ArgumentTypeError) as exc_info:
        OutputFormat('xml')
    message = 'Unknown output format "xml". ' \
              'Options: [\'json\', \'markdown\', \'csv\']'
    assert str(exc_info.value) == message


@pytest.mark.parametrize('value,message', [
    ('-1', 'Negative value: -1'),
    ('ten', 'Not an integer: ten'),
])
def test_positive_int(value: str, message: str) -> None:
    """Test counts and seeds must be non-negative integers"""
    assert PositiveInt('3') == 3
    assert PositiveInt(0) == 0
    with pytest.raises(ArgumentTypeError) as exc_info:
        PositiveInt(value)
    assert str(exc_info.value) == message


def test_timezone() -> None:
    """Test timezone names are converted"""
    assert TimeZone('US/Pacific') == pytz.timezone('US/Pacific')
    with pytest.raises(ArgumentTypeError) as exc_info:
        TimeZone('Mars/Olympus')
    assert str(exc_info.value) == 'Unknown timezone "Mars/Olympus"'


@pytest.mark.parametrize('kwargs,message', [
    (dict(command='verify-point'), 'verify-point requires --point'),
    (dict(command='verify-point', point=(QQ(1), QQ(0))),
     'Point has 2 coordinates, expected 3'),
    (dict(command='verify-point', system='nlie2', point=(QQ(1), QQ(0))),
     'Point has 2 coordinates, expected 1'),
    (dict(command='dims', point=(QQ(1),)),
     '--point is only valid with verify-point, not dims'),
    (dict(command='classify', output='csv'),
     'csv output is only valid with dump-matrix'),
    (dict(command='plot'), 'Unknown command: plot'),
])
def test_run_config_error(kwargs: dict, message: str) -> None:
    """Test inconsistent settings are rejected"""
    with pytest.raises(ConfigError) as exc_info:
        RunConfig(**kwargs)
    assert str(exc_info.value) == message


def test_parse_config() -> None:
    """Test command line arguments become a run configuration"""
    config = parse_config(['verify-point', '--point', '1,0,2',
                           '--random-points', '2', '--seed', '5',
                           '--timezone', 'US/Pacific', '-v'])
    assert config.command == 'verify-point'
    assert config.system == 'com-lie'
    assert config.point == (QQ(1), QQ(0), QQ(2))
    assert config.random_points == 2
    assert config.seed == 5
    assert config.verbose
    assert str(config.timezone) == 'US/Pacific'
    assert parse_config(['dims']).timezone == pytz.utc


@pytest.mark.parametrize('argv', [
    ['plot'],
    ['dims', '--system', 'poisson'],
    ['verify-point', '--point', 'a,b,c'],
    ['verify-point'],
    [],
])
def test_parse_config_error(argv: list) -> None:
    """Test invalid command lines raise a configuration error"""
    with pytest.raises(ConfigError):
        parse_config(argv)


def test_main_config_error(capsys) -> None:
    """Test invalid arguments exit with status 1"""
    assert main(['dims', '--output', 'xml']) == 1
    assert capsys.readouterr().err.startswith('distlaw: error: ')


@pytest.mark.slow
def test_classify_deterministic(capsys) -> None:
    """Test repeated classifications print identical reports"""
    assert main(['classify']) == 0
    first = capsys.readouterr().out
    assert main(['classify']) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report['groebner_basis'] == ['t2', 't1*t3 - t3', 't1^2 - t1']
    assert report['matched_candidates'] == ['trivial', 'livernet-loday']


@pytest.mark.slow
def test_classify_markdown(capsys) -> None:
    """Test the Markdown report lists the basis and the components"""
    assert main(['classify', '--system', 'com-lie',
                 '--output', 'markdown']) == 0
    text = capsys.readouterr().out
    assert text.startswith('# Distributive laws for `com-lie`\n')
    assert '- `t1^2 - t1`' in text
    assert '- (0, 0, 0)' in text
    assert '- (1, 0, t3)' in text
    assert '| obstruction matrix | 208 x 24 |' in text


def test_dims(capsys) -> None:
    """Test the composite dimensions are printed as JSON"""
    assert main(['dims']) == 0
    result = json.loads(capsys.readouterr().out)
    assert result == {
        'system': 'com-lie',
        'composite_dimension': {'1': 1, '2': 2, '3': 6, '4': 24, '5': 120,
                                '6': 720},
    }


def test_dims_markdown(tmp_path) -> None:
    """Test the Markdown table is written to the output path"""
    path = join(str(tmp_path), 'dims.md')
    assert main(['dims', '-s', 'nlie2', '-o', 'markdown',
                 '--output-path', path]) == 0
    with open(path) as fp:
        lines = fp.read().splitlines()
    assert lines[:3] == ['| n | dim |', '| --- | --- |', '| 1 | 1 |']
    assert lines[-1] == '| 6 | 76 |'


def test_verify_point(capsys) -> None:
    """Test a distributive law is certified with status 0"""
    assert main(['verify-point', '-p', '1,0,-3/2']) == 0
    (certificate,) = json.loads(capsys.readouterr().out)
    assert certificate == {
        'point': ['1', '0', '-3/2'],
        'rank': 96,
        'target': 96,
        'is_law': True,
        'obstruction': None,
    }


@pytest.mark.slow
def test_verify_point_refuted(capsys, tmp_path) -> None:
    """Test a refuted point exits with status 3 and keeps its history"""
    history = join(str(tmp_path), 'history.json')
    argv = ['verify-point', '-p', '1,1,0', '--random-points', '2',
            '--seed', '3', '-o', 'markdown', '--history-file', history]
    assert main(argv) == 3
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith('- (1,1,0): rank ')
    assert 'not a law' in lines[0]
    with open(history) as fp:
        names = [entry['name'] for entry in json.load(fp)]
    assert 'Distributive Law Consequences' in names


def test_iso_check(capsys) -> None:
    """Test the isomorphism grid passes"""
    assert main(['iso-check']) == 0
    checks = json.loads(capsys.readouterr().out)
    assert len(checks) == 9
    assert all(c['rescaling_holds'] and c['phi_holds'] for c in checks)
    assert {c['phi_q'] for c in checks} == {'-1', '-4', '-1/9'}


def test_iso_check_failure(monkeypatch, capsys) -> None:
    """Test a failing check is reported as an invariant violation"""
    def failing(q, scale):
        return IsoCheck(QQ(0), QQ(1), QQ(0), True, QQ(-1), False)

    monkeypatch.setattr(cli, 'iso_check', failing)
    assert run(RunConfig(command='iso-check')) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith('Internal invariant violation: ')


@pytest.mark.slow
def test_dump_matrix(monkeypatch, tmp_path, capsys) -> None:
    """Test the intermediate matrices are written to the output directory"""
    monkeypatch.setenv('DISTLAW_OUTPUT_DIR', str(tmp_path))
    assert main(['dump-matrix']) == 0
    expected = ['L.csv', 'L_provenance.csv', 'Lprime.csv', 'M.csv',
                'M_provenance.csv', 'S.txt', 'transcript.json']
    assert sorted(listdir(str(tmp_path))) == expected
    assert len(capsys.readouterr().out.splitlines()) == 7
    with open(join(str(tmp_path), 'S.txt')) as fp:
        assert len(fp.read().splitlines()) == 32
    with open(join(str(tmp_path), 'M.csv')) as fp:
        assert len(fp.read().splitlines()) == 1153
    with open(join(str(tmp_path), 'transcript.json')) as fp:
        assert len(json.load(fp)) == 96
