"""
Command line interface

Exit codes are ``0`` on success, ``1`` when a check fails and ``2``
when an input cannot be read.
"""
import argparse
import difflib
import json
import logging
import os
import sys
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractError, DimensionError, InvalidGraphError
from .gadgets import format_table1, table1_records
from .mapping import TRACES, build_trace
from .options import options
from .patterns import execute_pattern, pattern_from_json
from .policy import OutcomePolicy
from .scheduler import (build_schedule, execute_schedule, read_graph,
                        schedule_to_json)
from .statevector import fidelity, prepare
from .verification import SUITES, run_suite

__all__ = ['CliConfig', 'main', 'cmd_verify', 'cmd_table1',
           'cmd_schedule', 'cmd_run_pattern', 'cmd_map',
           'EXIT_OK', 'EXIT_FAILURE', 'EXIT_INPUT']

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2

TABLE1_PATH = os.path.join(os.path.dirname(__file__), 'data',
                           'table1.txt')


@dataclass(frozen=True)
class CliConfig:
    """
    Settings shared by all commands

    Parameters
    ----------
    seed : int
        Seed of every random choice.
    tolerance : float
        Tolerance of fidelity and probability checks.
    output : str, optional
        File to write the report to. Standard output if ``None``.
    format : str
        ``'text'`` or ``'json'``.
    """
    seed: int = 0
    tolerance: float = 1e-10
    output: str = None
    format: str = 'text'

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(
                "tolerance must be positive, got {}".format(self.tolerance))
        if not 0 <= self.seed < 2**64:
            raise ValueError(
                "seed must be a 64-bit unsigned integer, got {}".format(
                    self.seed))
        if self.format not in ('text', 'json'):
            raise ValueError("Unknown format {!r}".format(self.format))


def _emit(config, text):
    if config.output is None:
        print(text)
        return
    with open(config.output, 'w') as f:
        f.write(text + '\n')


def cmd_verify(suite, config):
    """
    Run verification suites

    Returns
    -------
    code : int
        ``0`` if every check passed, ``1`` otherwise.
    """
    with options(tolerance=config.tolerance):
        report = run_suite(suite, tol=config.tolerance, seed=config.seed)
    ok = bool(report['passed'].all())
    for row in report[~report['passed']].itertuples():
        logger.error("%s/%s failed: %d branches, worst deficit %.3g",
                     row.suite, row.check, row.branches,
                     row.worst_deficit)
    if config.format == 'json':
        _emit(config, json.dumps({
            'seed': config.seed,
            'passed': ok,
            'checks': json.loads(report.to_json(orient='records'))}))
    else:
        _emit(config, '\n'.join([
            'seed: {}'.format(config.seed),
            report.to_string(index=False),
            'verify: {}'.format('PASS' if ok else 'FAIL')]))
    return EXIT_OK if ok else EXIT_FAILURE


def _normalized(text):
    return [' '.join(line.split()) for line in text.strip().splitlines()]


def cmd_table1(config):
    """
    Print the evolution of procedure A and compare it to the golden copy
    """
    df = table1_records()
    text = format_table1(df)
    with open(TABLE1_PATH) as f:
        golden = f.read()
    if _normalized(text) != _normalized(golden):
        diff = difflib.unified_diff(_normalized(golden), _normalized(text),
                                    'golden', 'computed', lineterm='')
        _emit(config, '\n'.join(diff))
        return EXIT_FAILURE
    if config.format == 'json':
        _emit(config, df.to_json(orient='records'))
    else:
        _emit(config, text)
    return EXIT_OK


def cmd_schedule(path, procedure, config, execute=False):
    """
    Schedule the measurements that prepare a graph state

    Parameters
    ----------
    path : str
        Graph file, JSON or an edge list.
    procedure : str
        ``'A'`` or ``'B'``.
    config : CliConfig
        Settings.
    execute : bool
        Also run the schedule on the stabilizer engine and check that
        the corrected state is the graph state.
    """
    try:
        with open(path) as f:
            g = read_graph(f.read())
        sched = build_schedule(g, procedure)
    except (OSError, ValueError) as err:
        logger.error("Cannot schedule %s: %s", path, err)
        return EXIT_INPUT

    result = {'schedule': json.loads(schedule_to_json(sched))}
    code = EXIT_OK
    if execute:
        result['seed'] = config.seed
        try:
            _, corrections, _ = execute_schedule(
                sched, OutcomePolicy.sample(config.seed))
        except ContractError as err:
            logger.error("Schedule failed: %s", err)
            result['graph_state_check'] = 'FAIL'
            code = EXIT_FAILURE
        else:
            result['corrections'] = str(corrections)
            result['graph_state_check'] = 'PASS'

    if config.format == 'json':
        _emit(config, json.dumps(result))
    else:
        lines = [json.dumps(result['schedule'], indent=2)]
        if execute:
            lines.append('seed: {}'.format(config.seed))
            if 'corrections' in result:
                lines.append('corrections: {}'.format(
                    result['corrections']))
            lines.append('graph-state check: {}'.format(
                result['graph_state_check']))
        _emit(config, '\n'.join(lines))
    return code


def cmd_run_pattern(path, state, config):
    """
    Run a pattern on a product input state

    Parameters
    ----------
    path : str
        Pattern JSON file.
    state : str, optional
        One symbol out of ``0 1 + -`` per input. ``|+...+⟩`` if not
        given.
    config : CliConfig
        Settings. The seed decides the outcomes.
    """
    try:
        with open(path) as f:
            p = pattern_from_json(f.read())
        k = len(p.inputs)
        s = prepare(k, state if state is not None else '+' * k)
    except (OSError, KeyError, ValueError) as err:
        logger.error("Cannot run %s: %s", path, err)
        return EXIT_INPUT

    try:
        with options(tolerance=config.tolerance):
            out, outcomes, byproduct = execute_pattern(
                p, s, OutcomePolicy.sample(config.seed))
    except ContractError as err:
        logger.error("Cannot run %s: %s", p.name, err)
        return EXIT_INPUT
    corrected = out if byproduct is None else out.apply_pauli(byproduct)

    result = {'pattern': p.name, 'seed': config.seed,
              'outcomes': outcomes,
              'byproduct': None if byproduct is None else str(byproduct)}
    code = EXIT_OK
    if p.unitary is not None and byproduct is not None:
        try:
            expected = s.apply_unitary(p.unitary, range(k))
        except DimensionError as err:
            logger.error("Pattern %s: %s", p.name, err)
            return EXIT_INPUT
        f = float(fidelity(expected, corrected))
        result['fidelity'] = f
        if 1 - f > config.tolerance:
            code = EXIT_FAILURE
    amps = corrected.amps
    result['amplitudes'] = [[float(z.real), float(z.imag)] for z in amps]

    if config.format == 'json':
        _emit(config, json.dumps(result))
    else:
        lines = ['pattern: {}'.format(p.name),
                 'seed: {}'.format(config.seed),
                 'outcomes: {}'.format(''.join(map(str, outcomes))),
                 'byproduct: {}'.format(result['byproduct'])]
        if 'fidelity' in result:
            lines.append('fidelity: {:.12f}'.format(result['fidelity']))
        lines.append(corrected.dump())
        _emit(config, '\n'.join(lines))
    return code


def cmd_map(name, config, angle=None):
    """
    Emit a rewrite trace and validate it
    """
    with options(tolerance=config.tolerance):
        trace = build_trace(name, angle)
        report = trace.validate(tol=config.tolerance)
    ok = bool(report['passed'].all())
    if config.format == 'json':
        _emit(config, json.dumps({
            'trace': trace.name,
            'steps': json.loads(trace.to_json()),
            'validation': json.loads(report.to_json(orient='records')),
            'passed': ok}))
    else:
        _emit(config, '\n'.join([trace.pretty(),
                                 report.to_string(index=False)]))
    return EXIT_OK if ok else EXIT_FAILURE


def _angle(text):
    value = float(text)
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError("angle must be finite")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog='mbqcmap',
        description='Simulate and map measurement-based computations.')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--tolerance', type=float, default=1e-10)
    parser.add_argument('--format', choices=('text', 'json'),
                        default='text')
    parser.add_argument('--output', default=None,
                        help='File to write to instead of stdout.')
    parser.add_argument('--verbose', action='store_true')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('verify', help='Run verification suites.')
    p.add_argument('--suite', choices=('all',) + SUITES, default='all')

    sub.add_parser('table1', help='Evolution of procedure A.')

    p = sub.add_parser('schedule', help='Schedule a graph state.')
    p.add_argument('graph', help='Graph file, JSON or edge list.')
    p.add_argument('--procedure', choices=('A', 'B'), default='B')
    p.add_argument('--execute', action='store_true')

    p = sub.add_parser('run-pattern', help='Run a pattern file.')
    p.add_argument('pattern', help='Pattern JSON file.')
    p.add_argument('--state', default=None,
                   help="Input symbols such as '+0'.")

    p = sub.add_parser('map', help='Emit a rewrite trace.')
    p.add_argument('trace', choices=TRACES)
    p.add_argument('--angle', type=_angle, default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s')
    try:
        config = CliConfig(args.seed, args.tolerance, args.output,
                           args.format)
    except ValueError as err:
        logger.error("%s", err)
        return EXIT_INPUT

    if args.command == 'verify':
        return cmd_verify(args.suite, config)
    elif args.command == 'table1':
        return cmd_table1(config)
    elif args.command == 'schedule':
        return cmd_schedule(args.graph, args.procedure, config,
                            args.execute)
    elif args.command == 'run-pattern':
        return cmd_run_pattern(args.pattern, args.state, config)
    return cmd_map(args.trace, config, args.angle)


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
