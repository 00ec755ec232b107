"""
Branch-wise equivalence of circuits
"""
import logging

import pandas as pd

from .exceptions import (ContractError, DimensionError, EquivalenceError,
                         ZeroProbabilityError)
from .ir import Gate, Prepare, run_circuit
from .options import get_option
from .pauli import CliffordGate
from .policy import OutcomePolicy
from .statevector import StateVector, spanning_inputs
from .tableau import StabilizerTableau
from .utils import all_bitstrings

__all__ = ['branch_table', 'verify_equivalence', 'relabeling',
           'box_stabilizers', 'default_inputs', 'verify_unitary']

logger = logging.getLogger(__name__)


def default_inputs(k, seed=0):
    """
    Input states used when none are given
    """
    if k == 0:
        return [StateVector([1])]
    return spanning_inputs(k, seed)


def _bits_text(bits):
    return ''.join(str(b) for b in bits)


def branch_table(c, state):
    """
    Every possible outcome branch of a circuit on one input

    Parameters
    ----------
    c : Circuit
        Circuit to run.
    state : StateVector
        Input state.

    Returns
    -------
    out : list of dict
        One entry per branch of nonzero probability with keys
        ``bits``, ``probability``, ``raw`` (output before the
        corrections) and ``output`` (after them).
    """
    m = len(c.measurements)
    rows = []
    for bits in all_bitstrings(m):
        try:
            raw, _, prob = run_circuit(
                c, state, OutcomePolicy.force(bits, strict=True),
                corrections=False)
        except ZeroProbabilityError:
            continue
        output, _, _ = run_circuit(
            c, state, OutcomePolicy.force(bits, strict=True))
        rows.append({'bits': _bits_text(bits), 'probability': prob,
                     'raw': raw, 'output': output})
    logger.debug("%s: %d of %d branches possible", c.name, len(rows),
                 2 ** m)
    return rows


def _match(branch, candidates, tol):
    """
    Branch of the other circuit that reproduces ``branch``

    Candidates must agree on the probability and the corrected output.
    Those that also agree before the corrections come first, then the
    one with the same outcome bits.
    """
    best = None
    for other in candidates:
        if abs(other['probability'] - branch['probability']) > tol:
            continue
        fid = branch['output'].fidelity(other['output'])
        if fid < 1 - tol:
            continue
        raw = branch['raw'].fidelity(other['raw']) >= 1 - tol
        rank = (not raw, other['bits'] != branch['bits'])
        if best is None or rank < best[0]:
            best = (rank, other, 'raw' if raw else 'output', fid)
    if best is None:
        return None, None, None
    return best[1:]


def verify_equivalence(c1, c2, inputs=None, tol=None):
    """
    Check that two circuits do the same thing branch by branch

    For every input and every outcome branch of ``c1`` a branch of
    ``c2`` must occur with the same probability and leave the same
    output state up to a global phase, corrections applied. Among the
    partners the one that also agrees before the corrections is
    preferred, which exposes the relabeling of the outcomes.

    Parameters
    ----------
    c1, c2 : Circuit
        Circuits with the same number of inputs and outputs.
    inputs : list of StateVector, optional
        Input states. Defaults to a spanning set.
    tol : float, optional
        Tolerance. Defaults to the ``tolerance`` option.

    Returns
    -------
    out : pandas.DataFrame
        One row per input and branch of ``c1`` with the columns
        ``input``, ``branch``, ``probability``, ``matched`` (branch of
        ``c2``), ``via`` (``'raw'`` if the branches agree before the
        corrections, ``'output'`` otherwise) and ``fidelity``.

    Raises
    ------
    EquivalenceError
        If some branch has no counterpart. The error carries the
        offending branch.

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> cz = Circuit(2, [Gate('CZ', (0, 1))], inputs=(0, 1),
    ...              outputs=(0, 1))
    >>> report = verify_equivalence(cz, cz)
    >>> len(report), bool(report['fidelity'].min() > 0.999)
    (8, True)
    """
    if len(c1.inputs) != len(c2.inputs) or \
            len(c1.outputs) != len(c2.outputs):
        raise DimensionError(
            "Circuits differ in arity: {}->{} and {}->{}".format(
                len(c1.inputs), len(c1.outputs), len(c2.inputs),
                len(c2.outputs)))
    tol = get_option('tolerance') if tol is None else tol
    if inputs is None:
        inputs = default_inputs(len(c1.inputs))

    rows = []
    for i, state in enumerate(inputs):
        first = branch_table(c1, state)
        second = branch_table(c2, state)
        for branch in first:
            other, via, fid = _match(branch, second, tol)
            if other is None:
                raise EquivalenceError(
                    "Branch {} of {} on input {} has no counterpart in "
                    "{}".format(branch['bits'], c1.name, i, c2.name),
                    counterexample={'input': i, 'branch': branch['bits'],
                                    'probability': branch['probability']})
            rows.append({'input': i, 'branch': branch['bits'],
                         'probability': branch['probability'],
                         'matched': other['bits'], 'via': via,
                         'fidelity': fid})
    logger.debug("%s and %s agree on %d branch(es)", c1.name, c2.name,
                 len(rows))
    return pd.DataFrame(rows)


def relabeling(report):
    """
    Outcome relabeling found by :func:`verify_equivalence`

    Returns
    -------
    out : dict
        ``{branch of c1: branch of c2}`` when every input agrees on
        the same partner, otherwise ``None``.
    """
    pairs = report.groupby('branch')['matched'].unique()
    if any(len(v) != 1 for v in pairs):
        return None
    return {branch: v[0] for branch, v in pairs.items()}


def box_stabilizers(box):
    """
    Stabilizer generators of the state a preparation box makes

    Parameters
    ----------
    box : Box
        Box holding preparations and Clifford gates only.

    Returns
    -------
    out : StabilizerTableau
        State on the box qubits, in box order.

    Examples
    --------
    >>> from mbqcmap.ir import Box
    >>> box = Box('bell_prep', (2, 3), [
    ...     Prepare(2), Prepare(3), Gate('CZ', (2, 3)), Gate('H', (2,))])
    >>> box_stabilizers(box).same_group(
    ...     StabilizerTableau.from_stabilizers(['XX', 'ZZ']))
    True
    """
    local = {q: i for i, q in enumerate(box.qubits)}
    symbols = ['0'] * len(local)
    ops = list(box.flatten())
    for op in ops:
        if isinstance(op, Prepare):
            symbols[local[op.qubit]] = op.state
    t = StabilizerTableau.from_symbols(''.join(symbols))
    for op in ops:
        if isinstance(op, Prepare):
            continue
        if not isinstance(op, Gate) or op.param is not None:
            raise ContractError(
                "'{}' is not a Clifford gate".format(op.pretty()))
        t = t.apply_gate(
            CliffordGate(op.name, tuple(local[q] for q in op.qubits)))
    return t


def verify_unitary(c, u, inputs=None, tol=None):
    """
    Check that every branch of a circuit applies the unitary ``u``

    Parameters
    ----------
    c : Circuit
        Circuit with corrections.
    u : array_like
        Unitary on the input register.
    inputs : list of StateVector, optional
        Input states. Defaults to a spanning set.
    tol : float, optional
        Tolerance. Defaults to the ``tolerance`` option.

    Returns
    -------
    out : pandas.DataFrame
        Columns ``input``, ``branch``, ``probability`` and
        ``fidelity``.

    Raises
    ------
    EquivalenceError
        If a corrected output differs from ``u|ψ⟩``.

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> from mbqcmap.statevector import gate_matrix
    >>> c = Circuit(1, [Gate('H', (0,))], inputs=(0,), outputs=(0,))
    >>> report = verify_unitary(c, gate_matrix('H'))
    >>> bool(report['fidelity'].min() > 0.999)
    True
    """
    tol = get_option('tolerance') if tol is None else tol
    if inputs is None:
        inputs = default_inputs(len(c.inputs))
    targets = tuple(range(len(c.inputs)))

    rows = []
    for i, state in enumerate(inputs):
        ideal = state.apply_unitary(u, targets)
        for branch in branch_table(c, state):
            fid = ideal.fidelity(branch['output'])
            if fid < 1 - tol:
                raise EquivalenceError(
                    "Branch {} of {} on input {} has fidelity {}".format(
                        branch['bits'], c.name, i, fid),
                    counterexample={'input': i, 'branch': branch['bits'],
                                    'probability': branch['probability']})
            rows.append({'input': i, 'branch': branch['bits'],
                         'probability': branch['probability'],
                         'fidelity': fid})
    return pd.DataFrame(rows)
