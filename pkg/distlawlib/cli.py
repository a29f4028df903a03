"""Classify distributive laws between Com and Lie from the command line.

`classify` runs the full pipeline and prints the report as JSON or
Markdown. `verify-point` certifies parameter values by the rank of the
specialized consequence matrix and exits with status 3 when they do not give
a distributive law. `dims` prints the arity dimensions of the composite
operad, `dump-matrix` writes the intermediate matrices as csv files and
`iso-check` checks the rescaling and associative-product isomorphisms over a
fixed grid of parameters.

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
import os
import sys
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from dataclasses import dataclass
from os.path import join
from typing import (Callable, Dict, List, NoReturn, Optional, Sequence, TextIO,
                    Tuple, Union)

import pytz

from .classify import (ConsequencePipeline, History, PipelineInvariantError,
                       certify_points, composite_dimension, iso_check,
                       random_points, run_classification)
from .matred import transcript_to_json
from .polyring import Rational, format_poly, parse_rational
from .relations import (RelationSystem, build_com_lie_system,
                        build_nlie2_system)

SYSTEMS: Dict[str, Callable[[], RelationSystem]] = {
    'com-lie': build_com_lie_system,
    'nlie2': build_nlie2_system,
}
COMMANDS = ('classify', 'verify-point', 'dims', 'dump-matrix', 'iso-check')
OUTPUT_FORMATS = ('json', 'markdown', 'csv')
OUTPUT_DIR_VARIABLE = 'DISTLAW_OUTPUT_DIR'
ISO_GRID_Q = ('0', '1', '5')
ISO_GRID_SCALE = ('1', '2', '1/3')

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INVARIANT = 2
EXIT_REFUTED = 3


class ConfigError(ValueError):
    """Invalid command line or configuration"""


def SystemName(name: str) -> str:
    """Check that the relation system is known"""
    name = str(name).strip().lower()
    if name not in SYSTEMS:
        raise ArgumentTypeError(f'Unknown system "{name}". '
                                f'Options: {sorted(SYSTEMS)}')
    return name


def RationalPoint(point: str) -> Tuple[Rational, ...]:
    """Parse comma-separated rationals such as `1,0,-3/2`"""
    coordinates = [c.strip() for c in str(point).split(',')]
    if not any(coordinates):
        raise ArgumentTypeError('No coordinates specified')
    try:
        return tuple(parse_rational(c) for c in coordinates)
    except ValueError as err:
        raise ArgumentTypeError(str(err)) from err


def OutputFormat(fmt: str) -> str:
    """Check that the output format is supported"""
    fmt = str(fmt).strip().lower()
    if fmt not in OUTPUT_FORMATS:
        raise ArgumentTypeError(f'Unknown output format "{fmt}". '
                                f'Options: {list(OUTPUT_FORMATS)}')
    return fmt


def PositiveInt(value: Union[str, int]) -> int:
    """Check that an integer is not negative"""
    try:
        number = int(value)
    except ValueError as err:
        raise ArgumentTypeError(f'Not an integer: {value}') from err
    if number < 0:
        raise ArgumentTypeError(f'Negative value: {number}')
    return number


def TimeZone(tzstr: str) -> pytz.BaseTzInfo:
    """Convert timezone string to timezone"""
    if tzstr not in pytz.all_timezones:
        raise ArgumentTypeError(f'Unknown timezone "{tzstr}"')
    return pytz.timezone(tzstr)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one command line run"""
    command: str
    system: str = 'com-lie'
    point: Optional[Tuple[Rational, ...]] = None
    output: str = 'json'
    output_path: Optional[str] = None
    seed: Optional[int] = None
    random_points: int = 0
    verbose: bool = False
    timezone: pytz.BaseTzInfo = pytz.utc
    history_file: Optional[str] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f'Unknown command: {self.command}')
        if self.system not in SYSTEMS:
            raise ConfigError(f'Unknown system: {self.system}')
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f'Unknown output format: {self.output}')
        if self.command == 'verify-point':
            if self.point is None:
                raise ConfigError('verify-point requires --point')
            expected = self.relation_system().parameters
            if len(self.point) != expected:
                raise ConfigError(f'Point has {len(self.point)} coordinates, '
                                  f'expected {expected}')
        elif self.point is not None:
            raise ConfigError(f'--point is only valid with verify-point, '
                              f'not {self.command}')
        if self.output == 'csv' and self.command != 'dump-matrix':
            raise ConfigError('csv output is only valid with dump-matrix')

    def relation_system(self) -> RelationSystem:
        return SYSTEMS[self.system]()

    @classmethod
    def from_args(cls, opt: Namespace) -> 'RunConfig':
        return cls(command=opt.command, system=opt.system, point=opt.point,
                   output=opt.output, output_path=opt.output_path,
                   seed=opt.seed, random_points=opt.random_points,
                   verbose=opt.verbose, timezone=opt.timezone,
                   history_file=opt.history_file)


class _Parser(ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise ConfigError(message)


def build_parser() -> ArgumentParser:
    parser = _Parser(prog='distlaw', description=__doc__)
    parser.add_argument('command', choices=COMMANDS,
                        help='Pipeline entry point')
    parser.add_argument('--system', '-s', type=SystemName, default='com-lie',
                        help=f'Relation system, one of {sorted(SYSTEMS)} '
                             '(default="com-lie")')
    parser.add_argument('--point', '-p', type=RationalPoint,
                        help='Comma-separated rational parameter values for '
                             'verify-point, e.g. 1,0,-3/2')
    parser.add_argument('--output', '-o', type=OutputFormat, default='json',
                        help='Report format: json or markdown. dump-matrix '
                             'always writes csv files (default="json")')
    parser.add_argument('--output-path',
                        help='File for the report, or directory for '
                             'dump-matrix. Reports go to stdout when '
                             f'omitted; dump-matrix falls back to '
                             f'${OUTPUT_DIR_VARIABLE}, then the current '
                             'directory.')
    parser.add_argument('--random-points', type=PositiveInt, default=0,
                        help='Extra random points for verify-point '
                             '(default=0)')
    parser.add_argument('--seed', type=PositiveInt,
                        help='Seed for the random points')
    parser.add_argument('--timezone', type=TimeZone, default='UTC',
                        help='Timezone specification for start/end time '
                             'of each pipeline stage. Must be one of '
                             '`pytz.all_timezones` (default="UTC").')
    parser.add_argument('--history-file',
                        help='Write the pipeline history as JSON to this '
                             'file')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='Print settings and results for each stage')
    return parser


def _emit(config: RunConfig, text: str, out: TextIO) -> None:
    if config.output_path:
        with open(config.output_path, 'w') as fp:
            fp.write(text)
    else:
        out.write(text)


def _finish_history(config: RunConfig, history: History) -> None:
    if config.verbose:
        for entry in history:
            print(entry, file=sys.stderr)
    if config.history_file:
        with open(config.history_file, 'w') as fp:
            json.dump(history, fp, indent=2, default=str)
            fp.write('\n')


def run_classify(config: RunConfig, out: TextIO) -> int:
    history: History = []
    report = run_classification(config.relation_system(), history,
                                config.timezone)
    _finish_history(config, history)
    text = report.to_markdown() if config.output == 'markdown' \
        else report.to_json()
    _emit(config, text, out)
    return EXIT_OK


def run_verify_point(config: RunConfig, out: TextIO) -> int:
    system = config.relation_system()
    history: History = []
    pipeline = ConsequencePipeline(system, history, config.timezone)
    assert config.point is not None
    points = [config.point] + random_points(
        system.parameters, config.random_points, config.seed)
    certificates = certify_points(system, points, pipeline)
    _finish_history(config, history)
    if config.output == 'markdown':
        text = ''.join(f'- {c.describe()}\n' for c in certificates)
    else:
        text = json.dumps([c.to_dict() for c in certificates], indent=2,
                          sort_keys=True) + '\n'
    _emit(config, text, out)
    return EXIT_OK if certificates[0].is_law else EXIT_REFUTED


def run_dims(config: RunConfig, out: TextIO) -> int:
    inner = config.relation_system().inner_dimension
    table = {n: composite_dimension(n, inner) for n in range(1, 7)}
    if config.output == 'markdown':
        text = '| n | dim |\n| --- | --- |\n' + ''.join(
            f'| {n} | {d} |\n' for n, d in table.items())
    else:
        text = json.dumps({'system': config.system,
                           'composite_dimension': {str(n): d for n, d
                                                   in table.items()}},
                          indent=2, sort_keys=True) + '\n'
    _emit(config, text, out)
    return EXIT_OK


def run_dump_matrix(config: RunConfig, out: TextIO) -> int:
    directory = (config.output_path or os.environ.get(OUTPUT_DIR_VARIABLE)
                 or os.curdir)
    os.makedirs(directory, exist_ok=True)
    history: History = []
    pipeline = ConsequencePipeline(config.relation_system(), history,
                                   config.timezone)
    written: List[str] = []

    def path(name: str) -> str:
        written.append(join(directory, name))
        return written[-1]

    pipeline.consequence_matrix.write_csv(path('M.csv'))
    pipeline.consequence_matrix.write_provenance(path('M_provenance.csv'))
    pipeline.smith.residual.write_csv(path('Lprime.csv'))
    pipeline.obstruction_matrix.write_csv(path('L.csv'))
    pipeline.obstruction_matrix.write_provenance(path('L_provenance.csv'))
    with open(path('S.txt'), 'w') as fp:
        fp.writelines(f'{format_poly(g)}\n' for g in pipeline.generators)
    with open(path('transcript.json'), 'w') as fp:
        fp.write(transcript_to_json(pipeline.smith.transcript))
    _finish_history(config, history)
    out.write(''.join(f'{p}\n' for p in written))
    return EXIT_OK


def run_iso_check(config: RunConfig, out: TextIO) -> int:
    checks = [iso_check(q, scale)
              for q in ISO_GRID_Q for scale in ISO_GRID_SCALE]
    if config.output == 'markdown':
        text = '| q | scale | rescaled q | rescaling | phi q | phi |\n' \
               '| --- | --- | --- | --- | --- | --- |\n'
        for check in checks:
            row = check.to_dict()
            text += (f'| {row["q"]} | {row["scale"]} | {row["rescaled_q"]} '
                     f'| {check.rescaling_holds} | {row["phi_q"]} '
                     f'| {check.phi_holds} |\n')
    else:
        text = json.dumps([c.to_dict() for c in checks], indent=2,
                          sort_keys=True) + '\n'
    _emit(config, text, out)
    if not all(check.ok for check in checks):
        failed = [c.to_dict() for c in checks if not c.ok]
        raise PipelineInvariantError(f'Isomorphism checks failed: {failed}')
    return EXIT_OK


HANDLERS: Dict[str, Callable[[RunConfig, TextIO], int]] = {
    'classify': run_classify,
    'verify-point': run_verify_point,
    'dims': run_dims,
    'dump-matrix': run_dump_matrix,
    'iso-check': run_iso_check,
}


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse and validate command line arguments

    Raises
    ------
    ConfigError
        If the arguments are invalid
    """
    opt = build_parser().parse_args(argv)
    return RunConfig.from_args(opt)


def run(config: RunConfig, out: Optional[TextIO] = None) -> int:
    """Execute a validated configuration and return the exit status"""
    try:
        return HANDLERS[config.command](config, out or sys.stdout)
    except PipelineInvariantError as err:
        print(f'Internal invariant violation: {err}', file=sys.stderr)
        return EXIT_INVARIANT


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command line entry point

    Returns
    -------
    0 on success, 1 for invalid arguments, 2 when a pipeline invariant is
    violated and 3 when verify-point refutes the point
    """
    try:
        config = parse_config(argv)
    except ConfigError as err:
        print(f'distlaw: error: {err}', file=sys.stderr)
        return EXIT_CONFIG
    return run(config)
