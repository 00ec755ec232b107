"""
Verification suites

Each suite runs a group of checks and returns a
:class:`pandas.DataFrame` with one row per check and the columns
``check``, ``branches`` (outcome branches looked at),
``worst_deficit`` (largest ``1 - fidelity`` seen) and ``passed``.
"""
import logging

import networkx as nx
import numpy as np
import pandas as pd

from .exceptions import (ContractError, EquivalenceError,
                         ZeroProbabilityError)
from .equivalence import verify_equivalence
from .gadgets import (PROCEDURES, cnot_gadget, remote_cnot_circuit,
                      remote_cz, repeat_until_success, teleport_apply,
                      two_qubit_measurement_count)
from .ir import Gate
from .mapping import (TRACES, build_pattern, build_trace,
                      circuit_to_pattern, cnot_gadget_circuit,
                      same_structure, teleportation_circuit)
from .options import get_option
from .patterns import verify_pattern
from .pauli import CliffordGate, PauliString
from .policy import OutcomePolicy
from .scheduler import build_schedule, execute_schedule
from .statevector import (MeasurementBasis, prepare, spanning_inputs, ux,
                          uz)
from .tableau import StabilizerTableau
from .utils import all_bitstrings, verify_arg

__all__ = ['SUITES', 'ANGLES', 'run_suite', 'verify_patterns',
           'verify_gadgets', 'verify_mapping', 'verify_scheduler',
           'cross_engine_check', 'random_clifford_circuit']

logger = logging.getLogger(__name__)

SUITES = ('patterns', 'gadgets', 'mapping', 'scheduler')

#: Angles the rotation patterns are checked at
ANGLES = (0.0, np.pi / 8, np.pi / 4, np.pi / 2, 1.234567)

_COLUMNS = ['check', 'branches', 'worst_deficit', 'passed']


def _row(check, branches, worst, tol):
    worst = float(worst) if np.isfinite(worst) else 1.0
    return {'check': check, 'branches': int(branches),
            'worst_deficit': max(worst, 0.0), 'passed': worst <= tol}


def _frame(rows):
    return pd.DataFrame(rows, columns=_COLUMNS)


def _tolerance(tol):
    return get_option('tolerance') if tol is None else tol


def _pattern_cases():
    yield 'wire', build_pattern('wire')
    for a in ANGLES:
        yield 'xrot({:.6g})'.format(a), build_pattern('xrot', a)
    for a in ANGLES:
        yield 'zrot({:.6g})'.format(a), build_pattern('zrot', a)
    yield 'euler', build_pattern('euler', np.pi / 8, np.pi / 4, 1.234567)
    for kind in ('cnot6', 'cnot_square', 'remote_cz'):
        yield kind, build_pattern(kind)


def verify_patterns(tol=None, seed=0):
    """
    Every branch of every standard pattern against its byproduct rule

    Each pattern is run on a register entangled with reference
    qubits and on the spanning inputs, whose random states are drawn
    from ``seed``.
    """
    tol = _tolerance(tol)
    rows = []
    for name, p in _pattern_cases():
        report = verify_pattern(p)
        spanning = verify_pattern(p, inputs='spanning', seed=seed)
        worst = 1 - min(report['fidelity'].min(),
                        spanning['fidelity'].min())
        rows.append(_row(name, len(report), worst, tol))
        logger.debug("pattern %s: %d branches, deficit %.3g", name,
                     len(report), worst)
    return _frame(rows)


def _branch_fidelities(run, n_bits, inputs):
    """
    Worst fidelity over inputs and forced branches

    ``run(state, policy)`` returns the actual and the expected output.
    """
    worst, branches = 1.0, 0
    for bits in all_bitstrings(n_bits):
        seen = False
        for state in inputs:
            policy = OutcomePolicy.force(bits, strict=True)
            try:
                actual, expected = run(state, policy)
            except ZeroProbabilityError:
                continue
            seen = True
            worst = min(worst, actual.fidelity(expected))
        branches += seen
    return branches, 1 - worst


def _teleport_case(u, variant):
    def run(state, policy):
        _, index, out, sigma = teleport_apply(state, 0, u, variant, policy)
        if variant == 'a':
            expected = state.apply_pauli(sigma).apply_unitary(u, (0,))
        else:
            expected = state.apply_unitary(u, (0,)).apply_pauli(sigma)
        return out, expected
    return run


def _cnot_case(state, policy):
    _, _, out, correction = cnot_gadget(state, 0, 1, policy)
    expected = state.apply_gate('CNOT', (0, 1)).apply_pauli(correction)
    return out, expected


def _remote_cnot_case(state, policy):
    out, correction = remote_cnot_circuit(state, 0, 1, policy)
    expected = state.apply_gate('CNOT', (0, 1)).apply_pauli(correction)
    return out, expected


def _remote_cz_case(proc):
    def run(state, policy):
        out, correction, _ = remote_cz(state, 0, 1, proc, policy)
        expected = state.apply_gate(PROCEDURES[proc].gate,
                                    (0, 1)).apply_pauli(correction)
        return out, expected
    return run


def _repeat_until_success_row(u, runs, seed, tol):
    policy = OutcomePolicy.sample(seed)
    inputs = spanning_inputs(1, seed)
    attempts, worst = [], 1.0
    for i in range(runs):
        state = inputs[i % len(inputs)]
        _, n, out = repeat_until_success(state, 0, u, policy)
        attempts.append(n)
        worst = min(worst, out.fidelity(state.apply_unitary(u, (0,))))
    mean = float(np.mean(attempts))
    logger.debug("repeat until success: mean %.3f attempts over %d runs",
                 mean, runs)
    row = _row('repeat_until_success(mean={:.3f})'.format(mean), runs,
               1 - worst, tol)
    row['passed'] = row['passed'] and 3.5 <= mean <= 4.5
    return row


def verify_gadgets(tol=None, seed=0, runs=10000):
    """
    Teleportation gadgets on every branch and a spanning input set

    Parameters
    ----------
    tol : float, optional
        Tolerance. Defaults to the ``tolerance`` option.
    seed : int
        Seed of the random inputs and of repeat-until-success.
    runs : int
        Repeat-until-success runs. Their mean number of attempts
        must lie in ``[3.5, 4.5]``.
    """
    tol = _tolerance(tol)
    u = uz(np.pi / 4) @ ux(1.234567)
    one = spanning_inputs(1, seed)
    two = spanning_inputs(2, seed)
    cases = [('teleport_a', _teleport_case(u, 'a'), 2, one),
             ('teleport_b', _teleport_case(u, 'b'), 2, one),
             ('cnot_gadget', _cnot_case, 4, two),
             ('remote_cnot', _remote_cnot_case, 2, two)]
    for proc in ('A', 'B', 'B_swapped', 'B_cnot'):
        n_bits = len(PROCEDURES[proc].observables())
        cases.append(('remote_cz_' + proc, _remote_cz_case(proc), n_bits,
                      two))

    rows = []
    for name, run, n_bits, inputs in cases:
        branches, worst = _branch_fidelities(run, n_bits, inputs)
        rows.append(_row(name, branches, worst, tol))

    for route, expected in (('procedure_B', 2), ('cnot_gadget', 5)):
        count = two_qubit_measurement_count(route)
        rows.append({'check': 'two_qubit_count({})={}'.format(route, count),
                     'branches': 0, 'worst_deficit': 0.0,
                     'passed': count == expected})
    if runs:
        rows.append(_repeat_until_success_row(u, runs, seed, tol))
    return _frame(rows)


def _end_check(name, trace, tol):
    """
    What the end circuit of a shipped trace must be
    """
    end = trace.end
    if name == 'wire':
        return verify_equivalence(end, teleportation_circuit(), tol=tol)
    if name in ('xrot', 'zrot'):
        box, = [b for b in end.boxes if b.tag == 'generalized_bell']
        return verify_equivalence(
            end, teleportation_circuit(box.rotation), tol=tol)
    if name == 'cnot_tqc_to_1wqc':
        if end.count(Gate, 'CNOT') or end.count(Gate, 'H') or \
                not same_structure(circuit_to_pattern(end),
                                   build_pattern('cnot6')):
            raise EquivalenceError(
                "{} does not end at the six-qubit pattern".format(name))
        return None
    if end != cnot_gadget_circuit():
        raise EquivalenceError(
            "{} does not end at the CNOT gadget".format(name))
    return None


def verify_mapping(tol=None, seed=0, angle=None):
    """
    Validate every shipped rewrite trace step by step
    """
    tol = _tolerance(tol)
    rows = []
    for name in TRACES:
        trace = build_trace(name, angle)
        inputs = spanning_inputs(len(trace.start.inputs), seed)
        report = trace.validate(inputs, tol)
        try:
            _end_check(name, trace, tol)
            ends = True
        except EquivalenceError as err:
            logger.warning("trace %s: %s", name, err)
            ends = False
        worst = report['worst_deficit'].max()
        row = _row('trace_' + name, report['branches'].sum(), worst, tol)
        row['passed'] = row['passed'] and ends and \
            bool(report['passed'].all())
        rows.append(row)
    return _frame(rows)


def _random_graph(rng, max_vertices=10, p=0.5):
    while True:
        n = int(rng.integers(2, max_vertices + 1))
        g = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))
        if g.number_of_edges():
            return g


def verify_scheduler(tol=None, seed=0, graphs=200, seeds=5,
                     circuits=500):
    """
    Depth and correctness of procedure B on random graphs

    The depth must be ``max(Δ, 2) + 1`` and every execution, once
    corrected, must give the graph state. The row ``cross_engine``
    runs :func:`cross_engine_check` on ``circuits`` circuits.
    """
    tol = _tolerance(tol)
    rng = np.random.default_rng(seed)
    rows = []
    depth_ok, runs, failures = 0, 0, 0
    for k in range(graphs):
        g = _random_graph(rng)
        delta = max(d for _, d in g.degree)
        sched = build_schedule(g, 'B')
        depth_ok += sched.depth == max(delta, 2) + 1
        for s in range(seeds):
            runs += 1
            try:
                execute_schedule(sched, OutcomePolicy.sample(seed + s))
            except ContractError as err:
                failures += 1
                logger.warning("graph %d seed %d: %s", k, s, err)
    rows.append({'check': 'depth_B', 'branches': graphs,
                 'worst_deficit': 0.0, 'passed': depth_ok == graphs})
    rows.append({'check': 'execute_B', 'branches': runs,
                 'worst_deficit': 0.0, 'passed': failures == 0})
    star = build_schedule(nx.star_graph(3), 'A')
    rows.append({'check': 'depth_A_star3={}'.format(star.depth),
                 'branches': 1, 'worst_deficit': 0.0,
                 'passed': star.depth == 4})
    rows.append(cross_engine_check(circuits, seed=seed, tol=tol))
    return _frame(rows)


_GATE_KINDS = ('H', 'S', 'CNOT', 'CZ')


def random_clifford_circuit(rng, max_qubits=8, max_ops=30,
                            max_measurements=6):
    """
    Random Clifford gates and Pauli measurements

    Returns
    -------
    n : int
        Number of qubits.
    ops : list
        :class:`~mbqcmap.pauli.CliffordGate` and
        :class:`~mbqcmap.pauli.PauliString` observables, in order.
    """
    n = int(rng.integers(1, max_qubits + 1))
    kinds = _GATE_KINDS if n > 1 else _GATE_KINDS[:2]
    n_ops = int(rng.integers(1, max_ops + 1))
    n_meas = int(rng.integers(1, max_measurements + 1))
    measure_at = set(rng.choice(n_ops, size=min(n_meas, n_ops),
                                replace=False).tolist())
    ops = []
    for i in range(n_ops):
        if i in measure_at:
            letters = ''
            while set(letters) <= {'I'}:
                letters = ''.join(rng.choice(list('IXYZ'), size=n))
            ops.append(PauliString.from_str(letters))
            continue
        kind = str(rng.choice(kinds))
        arity = 2 if kind in ('CNOT', 'CZ') else 1
        targets = rng.choice(n, size=arity, replace=False).tolist()
        ops.append(CliffordGate(kind, tuple(targets)))
    return n, ops


def _run_tableau(n, ops, policy):
    t = StabilizerTableau.from_symbols('0' * n)
    probs = []
    for op in ops:
        if isinstance(op, CliffordGate):
            t = t.apply_gate(op)
            continue
        p0 = t.probability(op)
        outcome, t = t.measure(op, policy)
        probs.append(p0 if outcome == 0 else 1 - p0)
    return probs


def _run_statevector(n, ops, policy):
    s = prepare(n, '0' * n)
    probs = []
    for op in ops:
        if isinstance(op, CliffordGate):
            s = s.apply_gate(op.kind, op.targets)
            continue
        _, prob, s = s.measure(None, MeasurementBasis.pauli_product(op),
                               policy)
        probs.append(prob)
    return probs


_ALLOWED_PROBABILITIES = np.array([0.0, 0.5, 1.0])


def cross_engine_check(circuits=500, seed=0, tol=None):
    """
    Tableau and statevector agree on random Clifford circuits

    Every forced branch must be possible in both engines or in
    neither, with the same probability, and that probability must
    be ``0``, ``1/2`` or ``1``.

    Returns
    -------
    out : dict
        A row of a suite report.
    """
    tol = _tolerance(tol)
    rng = np.random.default_rng(seed)
    branches, worst = 0, 0.0
    for _ in range(circuits):
        n, ops = random_clifford_circuit(rng)
        m = sum(isinstance(op, PauliString) for op in ops)
        for bits in all_bitstrings(m):
            results = []
            for run in (_run_tableau, _run_statevector):
                try:
                    results.append(run(
                        n, ops, OutcomePolicy.force(bits, strict=True)))
                except ZeroProbabilityError:
                    results.append(None)
            a, b = results
            if (a is None) != (b is None):
                worst = 1.0
                continue
            if a is None:
                continue
            branches += 1
            gap = np.abs(np.subtract(a, b)).max()
            off = np.abs(np.subtract.outer(
                b, _ALLOWED_PROBABILITIES)).min(axis=1).max()
            worst = max(worst, gap, off)
    return _row('cross_engine', branches, worst, tol)


def run_suite(suite='all', tol=None, seed=0, **kwargs):
    """
    Run one suite or all of them

    Parameters
    ----------
    suite : str
        ``'all'`` or one of :data:`SUITES`.
    tol : float, optional
        Tolerance. Defaults to the ``tolerance`` option.
    seed : int
        Seed of everything random.
    kwargs : dict
        Passed on to the suite function.

    Returns
    -------
    out : pandas.DataFrame
        Suite reports stacked, with a ``suite`` column in front.
    """
    verify_arg(suite, 'suite', ('all',) + SUITES)
    funcs = {'patterns': verify_patterns,
             'gadgets': verify_gadgets,
             'mapping': verify_mapping,
             'scheduler': verify_scheduler}
    names = SUITES if suite == 'all' else (suite,)
    frames = []
    for name in names:
        report = funcs[name](tol=tol, seed=seed, **kwargs)
        report.insert(0, 'suite', name)
        frames.append(report)
    return pd.concat(frames, ignore_index=True)
