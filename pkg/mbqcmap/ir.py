"""
Small circuit language used by the rewrite rules

A :class:`Circuit` is an ordered tuple of operations on labelled
wires. Measurements produce named outcomes (``'j1'``, ``'k2'``, ...)
and adaptive operations refer to those names. Boxes group a run of
operations under a tag such as ``'bell_prep'`` without changing what
they do.
"""
import hashlib
import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ContractError
from .statevector import MeasurementBasis, Register, StateVector
from .utils import parity, verify_arg

__all__ = ['Prepare', 'Gate', 'Measure', 'Correction', 'Box', 'Circuit',
           'run_circuit', 'GATE_NAMES', 'BOX_TAGS']

logger = logging.getLogger(__name__)

GATE_NAMES = {'H': 1, 'X': 1, 'Y': 1, 'Z': 1, 'UX': 1, 'UZ': 1,
              'CZ': 2, 'CNOT': 2}
BOX_TAGS = ('bell_prep', 'bell_meas', 'generalized_bell')
_ROTATIONS = ('UX', 'UZ')


def _keys(deps):
    return frozenset(str(k) for k in deps)


def _fmt_deps(deps):
    if not deps:
        return ''
    return '[{}]'.format('+'.join(sorted(deps)))


def _fmt_angle(a):
    return '{:.12g}'.format(a + 0.0)


@dataclass(frozen=True)
class Prepare:
    """
    Start a fresh wire in ``|0⟩`` or ``|+⟩``
    """
    qubit: int
    state: str = '+'

    def __post_init__(self):
        verify_arg(self.state, 'state', ('0', '+'))

    @property
    def qubits(self):
        return (self.qubit,)

    def pretty(self):
        return 'prepare {} |{}⟩'.format(self.qubit, self.state)


@dataclass(frozen=True)
class Gate:
    """
    Unitary gate

    ``UX`` and ``UZ`` take an angle ``param``. The angle is negated
    when the parity of the outcomes named in ``deps`` is odd.
    CNOT qubits are ``(control, target)``.
    """
    name: str
    qubits: tuple
    param: float = None
    deps: frozenset = frozenset()

    def __post_init__(self):
        verify_arg(self.name, 'name', GATE_NAMES)
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != GATE_NAMES[self.name]:
            raise ContractError(
                "{} acts on {} qubit(s), got {}".format(
                    self.name, GATE_NAMES[self.name], qubits))
        if len(set(qubits)) != len(qubits):
            raise ContractError(
                "{} needs distinct qubits, got {}".format(
                    self.name, qubits))
        if (self.name in _ROTATIONS) != (self.param is not None):
            raise ContractError(
                "Only UX and UZ take an angle, got {}({})".format(
                    self.name, self.param))
        if self.param is not None:
            if not np.isfinite(self.param):
                raise ContractError("Angle must be finite")
            object.__setattr__(self, 'param', float(self.param))
        if self.deps and self.name not in _ROTATIONS:
            raise ContractError(
                "Only rotations can be adaptive, got {}".format(self.name))
        object.__setattr__(self, 'qubits', qubits)
        object.__setattr__(self, 'deps', _keys(self.deps))

    @property
    def is_local(self):
        return len(self.qubits) == 1

    def angle(self, outcomes):
        sign = (-1) ** _outcome_parity(outcomes, self.deps)
        return sign * self.param

    def pretty(self):
        name = self.name
        if self.param is not None:
            name = '{}({}){}'.format(name, _fmt_angle(self.param),
                                     _fmt_deps(self.deps))
        return '{} {}'.format(name, ' '.join(map(str, self.qubits)))


@dataclass(frozen=True)
class Measure:
    """
    Destructive one-qubit measurement with a named outcome

    ``basis`` is ``'Z'``, ``'X'`` or ``'EQ'``. An ``'EQ'``
    measurement observes ``cos(ω)X + sin(ω)Y`` with ``ω = ±angle``,
    the sign set by the parity of ``deps``.
    """
    qubit: int
    basis: str = 'X'
    angle: float = 0.0
    deps: frozenset = frozenset()
    key: str = None

    def __post_init__(self):
        verify_arg(self.basis, 'basis', ('Z', 'X', 'EQ'))
        if self.basis != 'EQ' and (self.angle or self.deps):
            raise ContractError(
                "Only EQ measurements take an angle or dependencies")
        if not np.isfinite(self.angle):
            raise ContractError("Angle must be finite")
        if self.key is None:
            raise ContractError("A measurement needs an outcome key")
        object.__setattr__(self, 'qubit', int(self.qubit))
        object.__setattr__(self, 'angle', float(self.angle))
        object.__setattr__(self, 'deps', _keys(self.deps))

    @property
    def qubits(self):
        return (self.qubit,)

    def resolve(self, outcomes):
        if self.basis == 'Z':
            return MeasurementBasis.z()
        if self.basis == 'X':
            return MeasurementBasis.x()
        sign = (-1) ** _outcome_parity(outcomes, self.deps)
        return MeasurementBasis.equatorial(sign * self.angle)

    def pretty(self):
        basis = self.basis
        if basis == 'EQ':
            basis = 'EQ({}){}'.format(_fmt_angle(self.angle),
                                      _fmt_deps(self.deps))
        return 'measure {} {} -> {}'.format(self.qubit, basis, self.key)


@dataclass(frozen=True)
class Correction:
    """
    Pauli applied when the parity of ``deps`` is odd
    """
    letter: str
    qubit: int
    deps: frozenset = frozenset()

    def __post_init__(self):
        verify_arg(self.letter, 'letter', ('X', 'Z'))
        object.__setattr__(self, 'qubit', int(self.qubit))
        object.__setattr__(self, 'deps', _keys(self.deps))

    @property
    def qubits(self):
        return (self.qubit,)

    def pretty(self):
        return '{} {} if {}'.format(
            self.letter, self.qubit, '+'.join(sorted(self.deps)) or '0')


@dataclass(frozen=True)
class Box:
    """
    Named group of consecutive operations

    Parameters
    ----------
    tag : str
        ``'bell_prep'``, ``'bell_meas'`` or ``'generalized_bell'``.
    qubits : tuple
        The pair the box acts on, ``(a, b)``.
    ops : tuple
        Operations inside the box.
    rotation : tuple, optional
        ``(name, angle)`` of ``U`` for a generalized Bell measurement
        in the basis ``(U†⊗I)|Φj⟩``.
    """
    tag: str
    qubits: tuple
    ops: tuple
    rotation: tuple = None

    def __post_init__(self):
        verify_arg(self.tag, 'tag', BOX_TAGS)
        object.__setattr__(self, 'qubits',
                           tuple(int(q) for q in self.qubits))
        object.__setattr__(self, 'ops', tuple(self.ops))
        if self.rotation is not None:
            name, angle = self.rotation
            object.__setattr__(self, 'rotation', (name, float(angle)))
        inner = {q for op in self.ops for q in op.qubits}
        if not inner <= set(self.qubits):
            raise ContractError(
                "Box on {} holds operations on {}".format(
                    self.qubits, sorted(inner)))

    def flatten(self):
        for op in self.ops:
            if isinstance(op, Box):
                yield from op.flatten()
            else:
                yield op

    def pretty(self, indent=''):
        head = 'box {} {}'.format(self.tag, self.qubits)
        if self.rotation:
            head += ' basis ({}({})†⊗I)|Φj⟩'.format(
                self.rotation[0], _fmt_angle(self.rotation[1]))
        return '\n'.join([head + ' {'] +
                         [_pretty_op(op, indent + '  ')
                          for op in self.ops] +
                         [indent + '}'])


def _pretty_op(op, indent):
    if isinstance(op, Box):
        return indent + op.pretty(indent)
    return indent + op.pretty()


def _outcome_parity(outcomes, deps):
    try:
        return parity(outcomes, deps)
    except KeyError as err:
        raise ContractError(
            "Outcome {} is not known yet".format(err)) from None


def _flatten(ops):
    for op in ops:
        if isinstance(op, Box):
            yield from op.flatten()
        else:
            yield op


@dataclass(frozen=True)
class Circuit:
    """
    Ordered operations on labelled wires

    Parameters
    ----------
    n : int
        Number of distinct wire labels.
    ops : sequence
        :class:`Prepare`, :class:`Gate`, :class:`Measure`,
        :class:`Correction` and :class:`Box` operations.
    inputs : tuple
        Wires holding the input state before the first operation.
    outputs : tuple
        Wires holding the output state after the last operation,
        in output order.
    name : str
        Name used in reports.

    Notes
    -----
    A wire is live from its preparation (or from the start, if it
    is an input) to its measurement. Operations may only touch live
    wires and at the end exactly the outputs are live.

    Examples
    --------
    >>> c = Circuit(2, [Prepare(1), Gate('CZ', (0, 1)),
    ...                 Measure(0, 'X', key='j1'),
    ...                 Correction('X', 1, {'j1'})],
    ...             inputs=(0,), outputs=(1,))
    >>> print(c.pretty())
    circuit n=2 inputs=(0,) outputs=(1,)
      prepare 1 |+⟩
      CZ 0 1
      measure 0 X -> j1
      X 1 if j1
    >>> c.keys
    ('j1',)
    """
    n: int
    ops: tuple
    inputs: tuple = ()
    outputs: tuple = ()
    name: str = field(default='circuit', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'ops', tuple(self.ops))
        object.__setattr__(self, 'inputs',
                           tuple(int(q) for q in self.inputs))
        object.__setattr__(self, 'outputs',
                           tuple(int(q) for q in self.outputs))
        self._validate()

    def _validate(self):
        for wires, what in ((self.inputs, 'inputs'),
                            (self.outputs, 'outputs')):
            if len(set(wires)) != len(wires):
                raise ContractError(
                    "Repeated wire in the {}: {}".format(what, wires))

        live = set(self.inputs)
        seen = set(self.inputs)
        keys = set()
        for op in _flatten(self.ops):
            if isinstance(op, Prepare):
                if op.qubit in live:
                    raise ContractError(
                        "Wire {} is prepared while live".format(op.qubit))
                live.add(op.qubit)
            elif not set(op.qubits) <= live:
                raise ContractError(
                    "'{}' touches a wire that is not live".format(
                        op.pretty()))
            if set(getattr(op, 'deps', ())) - keys:
                raise ContractError(
                    "'{}' depends on an outcome not measured before "
                    "it".format(op.pretty()))
            if isinstance(op, Measure):
                if op.key in keys:
                    raise ContractError(
                        "Outcome key {} is used twice".format(op.key))
                keys.add(op.key)
                live.discard(op.qubit)
            seen.update(op.qubits)

        if live != set(self.outputs):
            raise ContractError(
                "Live wires at the end are {}, outputs are {}".format(
                    sorted(live), list(self.outputs)))
        seen.update(self.outputs)
        if len(seen) != self.n:
            raise ContractError(
                "Circuit uses {} wires, n is {}".format(len(seen), self.n))

    def flat_ops(self):
        """
        Operations with every box opened
        """
        return list(_flatten(self.ops))

    @property
    def measurements(self):
        return [op for op in self.flat_ops() if isinstance(op, Measure)]

    @property
    def keys(self):
        """
        Outcome keys in measurement order
        """
        return tuple(m.key for m in self.measurements)

    @property
    def boxes(self):
        return [op for op in self.ops if isinstance(op, Box)]

    def count(self, kind, name=None):
        """
        Number of operations of a kind, boxes opened

        Parameters
        ----------
        kind : type
            Operation class.
        name : str, optional
            Gate name, for ``kind=Gate``.
        """
        return sum(1 for op in self.flat_ops()
                   if isinstance(op, kind) and
                   (name is None or getattr(op, 'name', None) == name))

    def replace(self, start, stop, new_ops):
        """
        Circuit with ``ops[start:stop]`` replaced by ``new_ops``
        """
        ops = self.ops[:start] + tuple(new_ops) + self.ops[stop:]
        return Circuit(self.n, ops, self.inputs, self.outputs, self.name)

    def pretty(self):
        lines = ['circuit n={} inputs={} outputs={}'.format(
            self.n, self.inputs, self.outputs)]
        lines.extend(_pretty_op(op, '  ') for op in self.ops)
        return '\n'.join(lines)

    def digest(self):
        """
        Stable hash of the circuit text
        """
        return hashlib.sha256(self.pretty().encode('utf-8')).hexdigest()[:16]


def run_circuit(c, state, policy, corrections=True):
    """
    Run a circuit on an input state

    Parameters
    ----------
    c : Circuit
        Circuit to run.
    state : StateVector
        Input state, its qubit ``i`` goes on wire ``c.inputs[i]``.
    policy : OutcomePolicy
        Decides the measurement outcomes in order.
    corrections : bool
        If ``False``, :class:`Correction` operations are skipped.

    Returns
    -------
    output : StateVector
        State of the output wires, in output order.
    outcomes : dict
        ``{key: bit}`` for every measurement.
    prob : float
        Probability of the outcomes.

    Examples
    --------
    >>> from mbqcmap.policy import OutcomePolicy
    >>> c = Circuit(2, [Prepare(1), Gate('CZ', (0, 1)),
    ...                 Measure(0, 'X', key='j1'),
    ...                 Correction('X', 1, {'j1'})],
    ...             inputs=(0,), outputs=(1,))
    >>> out, outcomes, prob = run_circuit(
    ...     c, StateVector([1, 0]), OutcomePolicy.force([1]))
    >>> outcomes, round(prob, 12)
    ({'j1': 1}, 0.5)
    >>> round(out.expectation('X'), 12)
    1.0
    """
    if state.n != len(c.inputs):
        raise ContractError(
            "Circuit takes {} input qubit(s), state has {}".format(
                len(c.inputs), state.n))
    reg = Register(state)
    reg.labels = list(c.inputs)
    outcomes = {}
    prob = 1.0
    for op in c.flat_ops():
        if isinstance(op, Prepare):
            reg.add(op.state, [op.qubit])
        elif isinstance(op, Gate):
            param = op.angle(outcomes) if op.param is not None else None
            reg.gate(op.name, op.qubits, param)
        elif isinstance(op, Measure):
            outcome, p = reg.measure(op.qubit, op.resolve(outcomes),
                                     policy)
            outcomes[op.key] = outcome
            prob *= p
        elif corrections and _outcome_parity(outcomes, op.deps):
            reg.pauli({op.qubit: op.letter})
    logger.debug("ran %s: outcomes %s (p=%.6f)", c.name, outcomes, prob)
    return reg.select(c.outputs), outcomes, prob
