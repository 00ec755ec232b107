"""
Teleportation gadgets

Gates enacted by Bell-type measurements on prepared entangled
ancillas: teleportation with a unitary folded into the resource or
into the measurement, repeat-until-success, the CNOT gadget, the
remote CNOT circuit and the remote controlled-phase procedures that
use only incomplete two-qubit measurements.
"""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .exceptions import AttemptCapError, ContractError, DimensionError
from .frames import rule_from_branches
from .options import get_option
from .pauli import CliffordGate, PauliString, conjugate_by_clifford
from .policy import OutcomePolicy
from .statevector import MeasurementBasis, Register, bell_state, prepare
from .tableau import StabilizerTableau
from .utils import all_bitstrings, gf2_solve, verify_arg

__all__ = ['TwoQubitResource', 'AncillaCnot', 'MeasurementProcedure',
           'PROCEDURES', 'teleport_apply', 'repeat_until_success',
           'prepare_ancilla_cnot', 'cnot_gadget', 'remote_cnot_circuit',
           'remote_cz', 'procedure_tableau', 'procedure_byproduct_rule',
           'two_qubit_measurement_count', 'table1_records',
           'format_table1']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoQubitResource:
    """
    Entangled pair used up by a gadget

    Parameters
    ----------
    kind : str
        ``'bell'`` for ``(|00⟩+|11⟩)/√2``, ``'omega'`` for
        ``CZ|+⟩|+⟩`` and ``'rotated_bell'`` for ``(I⊗U)|Φ0⟩``.
    qubits : tuple
        Where the pair sits in the register.
    rotation : numpy.ndarray, optional
        ``U`` of a rotated Bell pair.
    """
    kind: str
    qubits: tuple = (0, 1)
    rotation: np.ndarray = None

    def __post_init__(self):
        verify_arg(self.kind, 'kind', ('bell', 'omega', 'rotated_bell'))
        if self.kind == 'rotated_bell' and self.rotation is None:
            raise ContractError("A rotated Bell pair needs a rotation")

    def state(self):
        if self.kind == 'bell':
            return bell_state(0)
        elif self.kind == 'omega':
            return prepare(2, '++').apply_gate('CZ', (0, 1))
        return bell_state(0).apply_unitary(self.rotation, (1,))


@dataclass(frozen=True)
class AncillaCnot:
    """
    Four-qubit resource of the CNOT gadget

    Two Bell pairs ``(a1, a2)`` and ``(a3, a4)`` with a CNOT from
    ``a2`` to ``a4``. The inputs are teleported through ``a1`` and
    ``a3`` and come out on ``a2`` and ``a4``.
    """
    qubits: tuple = (0, 1, 2, 3)
    recipe: str = 'CNOT(a2->a4) on Phi0(a1,a2) x Phi0(a3,a4)'

    def state(self):
        pairs = bell_state(0).append(bell_state(0))
        return pairs.apply_gate('CNOT', (1, 3))


@dataclass(frozen=True)
class MeasurementProcedure:
    """
    Remote gate by incomplete two-qubit measurements

    Local qubit order is control, ancillas, target.

    Parameters
    ----------
    id : str
        Name of the procedure.
    ancilla_init : str
        ``'omega'`` for one ``|Ω⟩`` pair, otherwise the symbol of a
        single ancilla, ``'+'`` or ``'0'``.
    sequence : tuple
        Two-qubit observables, measured in order.
    final : tuple
        Single-qubit observables on the ancillas, measured last.
    gate : str
        ``'CZ'`` or ``'CNOT'``, the gate realized.
    """
    id: str
    ancilla_init: str
    sequence: tuple
    final: tuple
    gate: str = 'CZ'

    @property
    def n_local(self):
        return len(self.sequence[0])

    @property
    def ancillas(self):
        return list(range(1, self.n_local - 1))

    def observables(self):
        return list(self.sequence) + list(self.final)

    def ancilla_stabilizers(self):
        if self.ancilla_init == 'omega':
            return ['IXZI', 'IZXI']
        letter = {'+': 'X', '0': 'Z'}[self.ancilla_init]
        return ['I' + letter + 'I']


PROCEDURES = {
    'A': MeasurementProcedure('A', 'omega', ('ZXII', 'IIXZ'),
                              ('IZII', 'IIZI')),
    'B': MeasurementProcedure('B', '+', ('ZZI', 'IXZ'), ('IZI',)),
    'B_swapped': MeasurementProcedure('B_swapped', '0', ('IXZ', 'ZZI'),
                                      ('IXI',)),
    'B_cnot': MeasurementProcedure('B_cnot', '+', ('ZZI', 'IXX'),
                                   ('IZI',), gate='CNOT'),
}

# Two-qubit measurements needed to make each resource
_PREPARATION_COST = {'omega': 1, '+': 0, '0': 0, 'a_cnot': 3}


def _check_qubits(s, qubits):
    for q in qubits:
        if not 0 <= q < s.n:
            raise DimensionError(
                "Qubit {} out of range for {} qubits".format(q, s.n))
    if len(set(qubits)) != len(qubits):
        raise DimensionError("Qubits must be distinct")


def teleport_apply(s, q, u, variant, policy):
    """
    Teleport a qubit and apply a one-qubit unitary on the way

    Parameters
    ----------
    s : StateVector
        Register.
    q : int
        Qubit to teleport.
    u : array_like
        One-qubit unitary ``U``.
    variant : str
        ``'a'`` prepares the resource ``(I⊗U)|Φ0⟩`` and measures in
        the Bell basis, leaving ``U σj|ψ⟩``. ``'b'`` uses ``|Φ0⟩``
        and measures in the basis ``(U†⊗I)|Φj⟩``, leaving
        ``σj U|ψ⟩``.
    policy : OutcomePolicy
        Decides the outcomes.

    Returns
    -------
    out_index : int
        Position of the output, the same as ``q``.
    index : BellIndex
        Outcome.
    state : StateVector
        Register with the teleported qubit back in position ``q``.
    correction : PauliString
        One-qubit ``σj``, to the right of ``U`` for variant
        ``'a'`` and to the left for variant ``'b'``.

    Examples
    --------
    >>> s = prepare(1, '0')
    >>> _, index, out, corr = teleport_apply(
    ...     s, 0, np.eye(2), 'b', OutcomePolicy.from_bell_indices([1]))
    >>> index.j, corr
    (1, PauliString('+X'))
    >>> round(out.expectation('Z'), 12)
    -1.0
    """
    verify_arg(variant, 'variant', ('a', 'b'))
    _check_qubits(s, [q])
    u = np.asarray(u, dtype=complex)
    reg = Register(s)
    if variant == 'a':
        pair = TwoQubitResource('rotated_bell', rotation=u).state()
        reg.add(pair, ['r1', 'r2'])
        index, _ = reg.bell_measure(q, 'r1', policy)
    else:
        reg.add(bell_state(0), ['r1', 'r2'])
        index, _ = reg.bell_measure(q, 'r1', policy, rotation=u)
    logger.debug("teleport variant %s: Bell index %d", variant, index.j)
    out = reg.restore({q: 'r2'})
    return q, index, out, index.pauli().unsigned()


def repeat_until_success(s, q, u, policy, cap=None):
    """
    Apply a one-qubit gate by variant-a teleportation until it works

    A nonzero Bell outcome leaves ``U σj|ψ⟩``. The faulty gate is
    undone with ``σj U†`` and the teleportation is tried again.

    Parameters
    ----------
    s : StateVector
        Register.
    q : int
        Qubit to act on.
    u : array_like
        One-qubit unitary, typically not Clifford.
    policy : OutcomePolicy
        Decides the outcomes.
    cap : int, optional
        Most attempts before giving up. Defaults to the
        ``attempt_cap`` option.

    Returns
    -------
    out_index : int
        Position of the output.
    attempts : int
        Number of teleportations used.
    state : StateVector
        Register with ``U`` applied to qubit ``q``.

    Raises
    ------
    AttemptCapError
        If no attempt succeeded within the cap.
    """
    cap = get_option('attempt_cap') if cap is None else cap
    u = np.asarray(u, dtype=complex)
    for attempt in range(1, cap + 1):
        q, index, s, sigma = teleport_apply(s, q, u, 'a', policy)
        if index.j == 0:
            logger.debug("repeat until success: %d attempt(s)", attempt)
            return q, attempt, s
        s = s.apply_unitary(u.conj().T, (q,))
        s = s.apply_unitary(sigma.to_matrix(), (q,))
    raise AttemptCapError(
        "No success in {} attempts (option attempt_cap)".format(cap))


def prepare_ancilla_cnot():
    """
    Prepare the resource of the CNOT gadget

    Returns
    -------
    state : StateVector
        Four-qubit state.
    layout : AncillaCnot
        Roles of the four qubits.
    """
    layout = AncillaCnot()
    return layout.state(), layout


def cnot_gadget(s, q1, q2, policy):
    """
    CNOT by two Bell measurements on a prepared resource

    Parameters
    ----------
    s : StateVector
        Register.
    q1, q2 : int
        Control and target.
    policy : OutcomePolicy
        Decides the four outcome bits.

    Returns
    -------
    outputs : tuple
        Positions of the outputs, ``(q1, q2)``.
    indices : tuple
        The two Bell outcomes.
    state : StateVector
        ``correction · CNOT |ψ⟩`` on the register.
    correction : PauliString
        Correction on ``(q1, q2)``, the Bell corrections commuted
        through the CNOT.

    Examples
    --------
    >>> _, indices, out, corr = cnot_gadget(
    ...     prepare(2, '00'), 0, 1,
    ...     OutcomePolicy.from_bell_indices([1, 0]))
    >>> [i.j for i in indices], corr
    ([1, 0], PauliString('+XX'))
    """
    _check_qubits(s, [q1, q2])
    resource, _ = prepare_ancilla_cnot()
    reg = Register(s)
    reg.add(resource, ['a1', 'a2', 'a3', 'a4'])
    i1, _ = reg.bell_measure(q1, 'a1', policy)
    i2, _ = reg.bell_measure(q2, 'a3', policy)
    before = PauliString([i1.j2, i2.j2], [i1.j1, i2.j1])
    correction = conjugate_by_clifford(
        before, CliffordGate('CNOT', (0, 1))).unsigned()
    logger.debug("CNOT gadget: Bell indices %d %d, correction %s",
                 i1.j, i2.j, correction)
    out = reg.restore({q1: 'a2', q2: 'a4'})
    return (q1, q2), (i1, i2), out, correction


def remote_cnot_circuit(s, control, target, policy):
    """
    CNOT between qubits that never interact

    A Bell pair ``(b1, b2)`` sits between the two qubits. The
    circuit applies CNOT from the control to ``b1`` and from ``b2``
    to the target, then measures ``b1`` in Z (outcome ``a``) and
    ``b2`` in X (outcome ``b``).

    Returns
    -------
    state : StateVector
        ``X_target**a Z_control**b CNOT |ψ⟩``
    correction : PauliString
        The correction on the full register.

    Examples
    --------
    >>> out, corr = remote_cnot_circuit(prepare(2, '+0'), 0, 1,
    ...                                 OutcomePolicy.force([1, 0]))
    >>> corr
    PauliString('+IX')
    """
    _check_qubits(s, [control, target])
    reg = Register(s)
    reg.add(bell_state(0), ['b1', 'b2'])
    reg.gate('CNOT', (control, 'b1'))
    reg.gate('CNOT', ('b2', target))
    a, _ = reg.measure('b1', MeasurementBasis.z(), policy)
    b, _ = reg.measure('b2', MeasurementBasis.x(), policy)
    letters = {}
    if a:
        letters[target] = 'X'
    if b:
        letters[control] = 'Z'
    return reg.restore({}), PauliString.on(s.n, letters)


def _local_to_labels(text, control, target, ancillas):
    labels = [control] + list(ancillas) + [target]
    return {labels[i]: c for i, c in enumerate(text) if c != 'I'}


def remote_cz(s, control, target, proc, policy):
    """
    Remote gate by incomplete two-qubit measurements

    Parameters
    ----------
    s : StateVector
        Register.
    control, target : int
        The two qubits.
    proc : str or MeasurementProcedure
        ``'A'``, ``'B'``, ``'B_swapped'`` or ``'B_cnot'``.
    policy : OutcomePolicy
        Decides the outcomes.

    Returns
    -------
    state : StateVector
        ``correction · CZ |ψ⟩`` (``CNOT`` for ``'B_cnot'``).
    correction : PauliString
        Correction on the full register.
    transcript : list of dict
        ``{'observable', 'outcome', 'weight'}`` per measurement,
        observables in local order control, ancillas, target.

    Examples
    --------
    >>> out, corr, transcript = remote_cz(
    ...     prepare(2, '++'), 0, 1, 'B', OutcomePolicy.force([0, 0, 0]))
    >>> [r['observable'] for r in transcript], corr
    (['ZZI', 'IXZ', 'IZI'], PauliString('+II'))
    """
    if isinstance(proc, str):
        verify_arg(proc, 'proc', PROCEDURES)
        proc = PROCEDURES[proc]
    _check_qubits(s, [control, target])

    reg = Register(s)
    ancillas = ['a{}'.format(i) for i in proc.ancillas]
    if proc.ancilla_init == 'omega':
        reg.add(TwoQubitResource('omega').state(), ancillas)
    else:
        reg.add(proc.ancilla_init, ancillas)

    transcript = []
    for text in proc.sequence:
        letters = _local_to_labels(text, control, target, ancillas)
        outcome, _ = reg.measure_pauli(letters, policy)
        transcript.append({'observable': text, 'outcome': outcome,
                           'weight': len(letters)})
    for text in proc.final:
        (label, letter), = _local_to_labels(
            text, control, target, ancillas).items()
        basis = MeasurementBasis(letter)
        outcome, _ = reg.measure(label, basis, policy)
        transcript.append({'observable': text, 'outcome': outcome,
                           'weight': 1})

    outcomes = [r['outcome'] for r in transcript]
    local = _correction_from_tableau(proc, outcomes)
    correction = PauliString.on(
        s.n, {q: local.letter(i)
              for i, q in enumerate((control, target))
              if local.letter(i) != 'I'})
    logger.debug("remote %s by procedure %s: outcomes %s, correction %s",
                 proc.gate, proc.id, outcomes, correction)
    return reg.restore({}), correction, transcript


def _tracked_names(proc):
    t = proc.n_local
    return {'X1': 'X' + 'I' * (t - 1),
            'Z1': 'Z' + 'I' * (t - 1),
            'X{}'.format(t): 'I' * (t - 1) + 'X',
            'Z{}'.format(t): 'I' * (t - 1) + 'Z'}


def procedure_tableau(proc, outcomes):
    """
    Follow a procedure on the stabilizer engine

    The inputs are left unspecified, the tableau holds the
    ancilla stabilizers and tracks the logical ``X`` and ``Z`` of
    the control (qubit 1) and the target (last qubit).

    Parameters
    ----------
    proc : str or MeasurementProcedure
        Procedure.
    outcomes : list
        One bit per measurement.

    Returns
    -------
    out : list of tuple
        ``(observable, outcome, tableau)`` after each measurement.
        The tracked operators of the last tableau are cleaned of the
        ancillas.
    """
    if isinstance(proc, str):
        verify_arg(proc, 'proc', PROCEDURES)
        proc = PROCEDURES[proc]
    observables = proc.observables()
    if len(outcomes) != len(observables):
        raise DimensionError(
            "Procedure {} makes {} measurements, got {} outcomes".format(
                proc.id, len(observables), len(outcomes)))

    t = StabilizerTableau.from_stabilizers(proc.ancilla_stabilizers(),
                                           _tracked_names(proc))
    policy = OutcomePolicy.force(outcomes, strict=True)
    steps = []
    for obs in observables:
        outcome, t = t.measure(obs, policy)
        steps.append((obs, outcome, t))
    obs, outcome, t = steps[-1]
    steps[-1] = (obs, outcome, t.clean_tracked(proc.ancillas))
    return steps


_IDEAL_IMAGES = {
    'CZ': {'X1': 'XZ', 'Z1': 'ZI', 'Xt': 'ZX', 'Zt': 'IZ'},
    'CNOT': {'X1': 'XX', 'Z1': 'ZI', 'Xt': 'IX', 'Zt': 'ZZ'},
}


def _correction_from_tableau(proc, outcomes):
    """
    Pauli C on (control, target) with final state C·G|ψ⟩

    A tracked input operator L ends as ±G L G†, the minus sign
    marking that C anticommutes with G L G†.
    """
    _, _, t = procedure_tableau(proc, outcomes)[-1]
    last = proc.n_local - 1
    images, signs = [], []
    for name, p in t.tracked.items():
        key = name if name.endswith('1') else name[0] + 't'
        image = p.restrict([0, last])
        if image.unsigned() != PauliString.from_str(
                _IDEAL_IMAGES[proc.gate][key]):
            raise ContractError(
                "Procedure {} does not realize {}: {} ends as "
                "{}".format(proc.id, proc.gate, name, p))
        images.append(image)
        signs.append(int(image.phase == 2))
    a = np.array([np.concatenate([p.z, p.x]) for p in images])
    v = gf2_solve(a, signs)
    return PauliString(v[:2], v[2:])


def procedure_byproduct_rule(proc):
    """
    Correction of a procedure as parities of its outcomes

    Examples
    --------
    >>> procedure_byproduct_rule('B').formulas()
    {'control': 'Z^{j2}', 'target': 'Z^{j1+j3}'}
    """
    if isinstance(proc, str):
        verify_arg(proc, 'proc', PROCEDURES)
        proc = PROCEDURES[proc]
    m = len(proc.observables())
    branches = {bits: _correction_from_tableau(proc, bits)
                for bits in all_bitstrings(m)}
    return rule_from_branches(branches, m, labels=('control', 'target'))


def two_qubit_measurement_count(route):
    """
    Two-qubit measurements used by a route to a two-qubit gate

    Includes the measurements that prepare the resources.

    Examples
    --------
    >>> [two_qubit_measurement_count(r)
    ...  for r in ('procedure_A', 'procedure_B', 'cnot_gadget')]
    [3, 2, 5]
    """
    verify_arg(route, 'route',
               ('procedure_A', 'procedure_B', 'procedure_B_swapped',
                'procedure_B_cnot', 'cnot_gadget'))
    if route == 'cnot_gadget':
        return _PREPARATION_COST['a_cnot'] + 2
    proc = PROCEDURES[route[len('procedure_'):]]
    weight_two = sum(1 for obs in proc.sequence
                     if len(obs) - obs.count('I') == 2)
    return _PREPARATION_COST[proc.ancilla_init] + weight_two


def table1_records(outcomes=(0, 0, 0, 0)):
    """
    Evolution of procedure A as a table

    Returns
    -------
    out : pandas.DataFrame
        Columns ``step``, ``measured``, ``operator`` and ``value``.
        Each step lists the stabilizers (operator ``S``) and the
        tracked operators ``X1, Z1, X4, Z4``.
    """
    rows = []
    names = ['1a', '1b', '2a', '2b']
    for name, (obs, _, t) in zip(
            names, procedure_tableau('A', list(outcomes))):
        for p in t.stabilizers:
            rows.append({'step': name, 'measured': obs, 'operator': 'S',
                         'value': str(p)})
        for label, p in t.tracked.items():
            rows.append({'step': name, 'measured': obs,
                         'operator': label, 'value': str(p)})
    return pd.DataFrame(rows, columns=['step', 'measured', 'operator',
                                       'value'])


def _spaced(value):
    sign = '-' if value.startswith('-') else ''
    return sign + ' '.join(value.lstrip('+-'))


def format_table1(df):
    """
    Text rendering of :func:`table1_records`

    Examples
    --------
    >>> print(format_table1(table1_records()).split('\\n\\n')[-1])
    2b) Measure IIZI
    S:  I I Z I
    S:  I Z I I
    X1: X I I Z
    Z1: Z I I I
    X4: Z I I X
    Z4: I I I Z
    """
    blocks = []
    for step, group in df.groupby('step', sort=False):
        lines = ['{}) Measure {}'.format(step, group['measured'].iloc[0])]
        for op, value in zip(group['operator'], group['value']):
            label = '{}:'.format(op)
            lines.append('{:<4}{}'.format(label, _spaced(value)))
        blocks.append('\n'.join(lines))
    return '\n\n'.join(blocks)
