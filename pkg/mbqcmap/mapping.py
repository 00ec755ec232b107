"""
Mapping between one-way patterns and teleportation circuits

A pattern is first translated into a :class:`~mbqcmap.ir.Circuit`
(preparations, CZ gates, measurements and corrections). Fixed
sequences of rewrite rules then turn that circuit into Bell state
preparations and (generalized) Bell measurements, or the other way
round. Every sequence is kept as a :class:`RewriteTrace` that can be
checked step by step.
"""
import json
import logging
from dataclasses import dataclass

import networkx as nx
import pandas as pd

from .exceptions import EquivalenceError, PatternMismatchError
from .equivalence import verify_equivalence
from .frames import ByproductRule
from .ir import Box, Circuit, Correction, Gate, Measure, Prepare
from .patterns import MeasurementPattern, PlanStep, build_pattern
from .rewrite_rules import (apply_rule, bell_transpose, box_bell_meas,
                            box_bell_prep, box_generalized_bell,
                            cancel_hh, cnot_on_plus_plus,
                            commute_cnot_cz, commute_diagonal,
                            commute_disjoint, commute_ux_h, commute_ux_z,
                            commute_uz_cz, equatorial_to_uz_x, insert_hh,
                            insert_rotation_pair, uncommute_uz_cz, unbox)
from .utils import verify_arg

__all__ = ['pattern_to_circuit', 'circuit_to_pattern', 'same_structure',
           'bell_prep_box', 'bell_meas_box', 'teleportation_circuit',
           'cnot_gadget_circuit', 'TraceStep', 'RewriteTrace',
           'map_wire_to_teleportation', 'generalized_bell_basis',
           'map_rotation_to_generalized_bell',
           'map_cnot_between_models', 'build_trace', 'TRACES']

logger = logging.getLogger(__name__)

TRACES = ('wire', 'xrot', 'zrot', 'cnot_tqc_to_1wqc', 'cnot_1wqc_to_tqc')
_DIAGONAL = ('Z', 'UZ', 'CZ')


def _key(step):
    return 'j{}'.format(step + 1)


def pattern_to_circuit(p):
    """
    Circuit that runs a measurement pattern

    Non-input qubits are prepared in ``|+⟩`` in label order. The
    CZ gates follow, edges between prepared qubits first. Step ``i``
    of the plan becomes a measurement with outcome ``j{i+1}`` and the
    byproduct rule becomes the corrections.

    Examples
    --------
    >>> print(pattern_to_circuit(build_pattern('wire')).pretty())
    circuit n=3 inputs=(1,) outputs=(3,)
      prepare 2 |+⟩
      prepare 3 |+⟩
      CZ 2 3
      CZ 1 2
      measure 1 X -> j1
      measure 2 X -> j2
      X 3 if j2
      Z 3 if j1
    """
    inputs = set(p.inputs)
    ops = [Prepare(q) for q in sorted(set(p.graph.nodes) - inputs)]
    edges = sorted(tuple(sorted(e)) for e in p.graph.edges)
    inner = [e for e in edges if not inputs & set(e)]
    outer = [e for e in edges if inputs & set(e)]
    ops.extend(Gate('CZ', e) for e in inner + outer)

    for i, step in enumerate(p.plan):
        if step.basis == 'EQ':
            ops.append(Measure(step.qubit, 'EQ', step.angle,
                               {_key(d) for d in step.deps}, key=_key(i)))
        else:
            ops.append(Measure(step.qubit, step.basis, key=_key(i)))

    if p.byproduct is not None:
        for out, xs, zs in zip(p.outputs, p.byproduct.x, p.byproduct.z):
            if xs:
                ops.append(Correction('X', out, {_key(s) for s in xs}))
            if zs:
                ops.append(Correction('Z', out, {_key(s) for s in zs}))
    return Circuit(p.graph.number_of_nodes(), ops, p.inputs, p.outputs,
                   name=p.name)


def circuit_to_pattern(c, name=None):
    """
    Read a measurement pattern off a circuit

    The circuit may only hold ``|+⟩`` preparations, CZ gates,
    measurements and corrections. Two CZ gates on the same pair
    cancel.

    Raises
    ------
    PatternMismatchError
        If the circuit holds anything else.
    """
    graph = nx.Graph()
    graph.add_nodes_from(c.inputs)
    plan = []
    step_of = {}
    corrections = {q: {'X': set(), 'Z': set()} for q in c.outputs}
    for op in c.flat_ops():
        if isinstance(op, Prepare) and op.state == '+':
            graph.add_node(op.qubit)
        elif isinstance(op, Gate) and op.name == 'CZ':
            if graph.has_edge(*op.qubits):
                graph.remove_edge(*op.qubits)
            else:
                graph.add_edge(*op.qubits)
        elif isinstance(op, Measure):
            step_of[op.key] = len(plan)
            plan.append(PlanStep(op.qubit, op.basis, op.angle,
                                 {step_of[k] for k in op.deps}))
        elif isinstance(op, Correction) and op.qubit in corrections:
            corrections[op.qubit][op.letter] ^= {step_of[k]
                                                 for k in op.deps}
        else:
            raise PatternMismatchError(
                "'{}' has no place in a measurement pattern".format(
                    op.pretty()))
    rule = ByproductRule([corrections[q]['X'] for q in c.outputs],
                         [corrections[q]['Z'] for q in c.outputs],
                         labels=c.outputs)
    return MeasurementPattern(graph, c.inputs, c.outputs, plan, rule,
                              name=name or c.name)


def _byproduct_by_qubit(p):
    if p.byproduct is None:
        return None
    qubit = [s.qubit for s in p.plan]
    return [(frozenset(qubit[s] for s in xs),
             frozenset(qubit[s] for s in zs))
            for xs, zs in zip(p.byproduct.x, p.byproduct.z)]


def same_structure(p, q):
    """
    Whether two patterns have the same graph, plan and byproducts

    Measurement order is ignored and byproducts are compared through
    the qubits whose outcomes they depend on.
    """
    def edges(g):
        return {frozenset(e) for e in g.edges}

    def steps(r):
        return sorted((s.qubit, s.basis, round(s.angle, 12)) for s in r.plan)

    return (set(p.graph.nodes) == set(q.graph.nodes) and
            edges(p.graph) == edges(q.graph) and
            p.inputs == q.inputs and p.outputs == q.outputs and
            steps(p) == steps(q) and
            _byproduct_by_qubit(p) == _byproduct_by_qubit(q))


def bell_prep_box(a, b, form='cz'):
    """
    Box preparing ``|Φ0⟩`` on the pair ``(a, b)``

    Parameters
    ----------
    a, b : int
        Wires.
    form : str
        ``'cz'`` prepares ``|+⟩|+⟩`` and applies ``H_a CZ``.
        ``'cnot'`` prepares ``|0⟩|0⟩`` and applies ``CNOT H_a``.
    """
    verify_arg(form, 'form', ('cz', 'cnot'))
    if form == 'cz':
        ops = [Prepare(a), Prepare(b), Gate('CZ', (a, b)), Gate('H', (a,))]
    else:
        ops = [Prepare(a, '0'), Prepare(b, '0'), Gate('H', (a,)),
               Gate('CNOT', (a, b))]
    return Box('bell_prep', (a, b), ops)


def bell_meas_box(a, b, keys, form='cz'):
    """
    Box measuring the pair ``(a, b)`` in the Bell basis

    Outcomes ``keys = (ka, kb)`` pick the state
    ``(Z**ka X**kb ⊗ I)|Φ0⟩`` in both forms.
    """
    verify_arg(form, 'form', ('cz', 'cnot'))
    ka, kb = keys
    if form == 'cz':
        ops = [Gate('H', (b,)), Gate('CZ', (a, b)),
               Measure(a, 'X', key=ka), Measure(b, 'X', key=kb)]
    else:
        ops = [Gate('CNOT', (a, b)), Gate('H', (a,)),
               Measure(a, 'Z', key=ka), Measure(b, 'Z', key=kb)]
    return Box('bell_meas', (a, b), ops)


def teleportation_circuit(rotation=None):
    """
    One-qubit teleportation from wire 1 to wire 3

    Parameters
    ----------
    rotation : tuple, optional
        ``('UX', φ)`` or ``('UZ', θ)``. The rotation is applied to
        wire 1 before the Bell measurement, which turns it into a
        generalized Bell measurement, and the teleported state
        comes out rotated.

    Examples
    --------
    >>> print(teleportation_circuit().pretty())
    circuit n=3 inputs=(1,) outputs=(3,)
      box bell_prep (2, 3) {
        prepare 2 |0⟩
        prepare 3 |0⟩
        H 2
        CNOT 2 3
      }
      box bell_meas (1, 2) {
        CNOT 1 2
        H 1
        measure 1 Z -> k1
        measure 2 Z -> k2
      }
      X 3 if k2
      Z 3 if k1
    """
    meas = bell_meas_box(1, 2, ('k1', 'k2'), form='cnot')
    if rotation is not None:
        name, angle = rotation
        verify_arg(name, 'rotation', ('UX', 'UZ'))
        g = Gate(name, (1,), angle)
        meas = Box('generalized_bell', (1, 2), (g, meas), (name, angle))
    ops = [bell_prep_box(2, 3, form='cnot'), meas,
           Correction('X', 3, {'k2'}), Correction('Z', 3, {'k1'})]
    return Circuit(3, ops, inputs=(1,), outputs=(3,), name='teleportation')


def cnot_gadget_circuit():
    """
    CNOT by teleportation through an entangled resource

    The CNOT acts on the halves ``5`` and ``6`` of two Bell pairs
    before the inputs ``1`` and ``2`` are teleported into them.
    """
    ops = [bell_prep_box(3, 5), bell_prep_box(4, 6),
           Gate('CNOT', (5, 6)),
           bell_meas_box(1, 3, ('j1', 'j3')),
           bell_meas_box(2, 4, ('j2', 'j4')),
           Correction('X', 5, {'j3'}), Correction('Z', 5, {'j1', 'j2'}),
           Correction('X', 6, {'j3', 'j4'}), Correction('Z', 6, {'j2'})]
    return Circuit(6, ops, inputs=(1, 2), outputs=(5, 6),
                   name='cnot_gadget')


@dataclass(frozen=True)
class TraceStep:
    """
    A rule and the circuit it produced

    ``support`` is an optional :class:`RewriteTrace` that derives
    the identity the rule relies on.
    """
    rule: object
    circuit: Circuit
    support: object = None


class RewriteTrace:
    """
    A start circuit and the rules applied to it, in order

    Parameters
    ----------
    start : Circuit
        Circuit before the first rule.
    name : str, optional
        Name of the trace. Defaults to the name of ``start``.

    Examples
    --------
    >>> trace = map_wire_to_teleportation()
    >>> [step.rule.name for step in trace.steps]
    ['insert_hh', 'box_bell_prep', 'box_bell_meas']
    >>> [box.tag for box in trace.end.boxes]
    ['bell_prep', 'bell_meas']
    """

    def __init__(self, start, name=None):
        self.start = start
        self.name = name or start.name
        self.steps = []

    def __len__(self):
        return len(self.steps)

    @property
    def end(self):
        return self.steps[-1].circuit if self.steps else self.start

    @property
    def circuits(self):
        return [self.start] + [step.circuit for step in self.steps]

    def apply(self, *rules, support=None):
        """
        Apply rules to the end circuit and record them

        Parameters
        ----------
        rules : RuleOperator
            Rules, in order.
        support : RewriteTrace, optional
            Derivation attached to the last of ``rules``.
        """
        for i, rule in enumerate(rules, start=1):
            attached = support if i == len(rules) else None
            self.steps.append(
                TraceStep(rule, apply_rule(self.end, rule), attached))
        return self

    def rule_names(self):
        """
        Names of the rules applied, supporting derivations included

        The rules of a supporting trace come before the rule that
        uses it.
        """
        names = []
        for step in self.steps:
            if step.support is not None:
                names.extend(step.support.rule_names())
            names.append(step.rule.name)
        return names

    def inverted(self, start=None, name=None):
        """
        Trace that undoes this one, last rule first

        Parameters
        ----------
        start : Circuit, optional
            Circuit to start from. Must equal :attr:`end`, it may
            differ in name.
        """
        start = self.end if start is None else start
        if start != self.end:
            raise PatternMismatchError(
                "Inverted trace must start at the end of {}".format(
                    self.name))
        trace = RewriteTrace(start, name or self.name + '_inverted')
        befores = self.circuits[:-1]
        for step, before in zip(reversed(self.steps), reversed(befores)):
            trace.apply(step.rule.inverse(before))
        return trace

    def validate(self, inputs=None, tol=None):
        """
        Check every circuit of the trace against the start

        Returns
        -------
        out : pandas.DataFrame
            One row per step with the columns ``step``, ``rule``,
            ``branches``, ``worst_deficit`` and ``passed``.
        """
        rows = []
        for i, step in enumerate(self.steps, start=1):
            try:
                report = verify_equivalence(self.start, step.circuit,
                                            inputs, tol)
            except EquivalenceError as err:
                logger.warning("%s: step %d (%r) fails: %s", self.name, i,
                               step.rule, err)
                rows.append({'step': i, 'rule': repr(step.rule),
                             'branches': 0, 'worst_deficit': 1.0,
                             'passed': False})
                continue
            passed = True
            if step.support is not None:
                passed = bool(
                    step.support.validate(tol=tol)['passed'].all())
                if not passed:
                    logger.warning("%s: step %d (%r) has a failing "
                                   "derivation", self.name, i, step.rule)
            rows.append({'step': i, 'rule': repr(step.rule),
                         'branches': len(report),
                         'worst_deficit': 1 - report['fidelity'].min(),
                         'passed': passed})
        return pd.DataFrame(rows, columns=['step', 'rule', 'branches',
                                           'worst_deficit', 'passed'])

    def to_json(self):
        """
        Rules, sites and circuit hashes as a JSON list
        """
        return json.dumps(self._records())

    def _records(self):
        records = []
        for step in self.steps:
            record = {
                'rule': step.rule.name,
                'site': {k: v for k, v in sorted(step.rule.site.items())
                         if v is not None},
                'circuit_hash': step.circuit.digest()}
            if step.support is not None:
                record['support'] = step.support._records()
            records.append(record)
        return records

    def pretty(self, indent=''):
        lines = ['trace {} ({} steps)'.format(self.name, len(self)),
                 self.start.pretty()]
        for i, step in enumerate(self.steps, start=1):
            if step.support is not None:
                lines.append('-- {}. derived by'.format(i))
                lines.append(step.support.pretty(indent='   '))
            lines.append('-- {}. {!r}'.format(i, step.rule))
            lines.append(step.circuit.pretty())
        text = '\n'.join(lines)
        return '\n'.join(indent + line for line in text.splitlines())


def _three_line(p, kind):
    """
    Input, middle and output wire of a two-step line pattern
    """
    if len(p.plan) != 2 or len(p.inputs) != 1 or len(p.outputs) != 1:
        raise PatternMismatchError(
            "{} needs a three-qubit line pattern, got {}".format(
                kind, p.name))
    a, = p.inputs
    mid = p.plan[1].qubit
    if p.plan[0].qubit != a or not p.graph.has_edge(a, mid):
        raise PatternMismatchError(
            "{}: the input is not measured first".format(p.name))
    return a, mid


def _wire_rules(mid):
    return [insert_hh(qubit=mid, index=3), box_bell_prep(index=0),
            box_bell_meas(index=1)]


def map_wire_to_teleportation(p=None):
    """
    Rewrite the quantum wire into one-qubit teleportation

    ``H H`` is inserted on the middle wire. The first ``H`` closes
    the Bell pair preparation on the middle and output wires and
    the second one opens the Bell measurement of the input and the
    middle wire.

    Parameters
    ----------
    p : MeasurementPattern, optional
        Wire pattern. Defaults to ``build_pattern('wire')``.
    """
    p = build_pattern('wire') if p is None else p
    _, mid = _three_line(p, 'map_wire_to_teleportation')
    if any(s.basis != 'X' for s in p.plan):
        raise PatternMismatchError(
            "{} is not a wire, it has non-X measurements".format(p.name))
    trace = RewriteTrace(pattern_to_circuit(p), name='wire')
    return trace.apply(*_wire_rules(mid))


def generalized_bell_basis(angle):
    """
    Derive the generalized Bell measurement from a Bell measurement

    The start circuit draws two random bits ``k1, k2``, prepares
    ``(Z**k1 X**k2 ⊗ I)|Φ0⟩`` on the wires ``(1, 2)`` and Bell
    measures them, so that ``j1, j2`` always equal ``k1, k2``.
    Inserting ``Ux(φ) Ux(-φ)`` on wire 1 and carrying ``Ux(φ)``
    through the Z correction, across the Bell pair with
    :class:`~mbqcmap.rewrite_rules.bell_transpose` and into the
    measurement leaves ``Uz(φ)``, adaptive on ``k1``, between the two
    X measurements. The prepared states are then the basis states of
    the measurement with the adaptive ``Uz``, which is the generalized
    Bell measurement in the basis ``(Ux(φ)†⊗I)|Φj⟩``.

    Parameters
    ----------
    angle : float
        Angle ``φ`` of the adaptive ``Uz``.

    Returns
    -------
    out : RewriteTrace
        Trace without inputs or outputs.
    """
    ops = [Prepare(3), Measure(3, 'Z', key='k1'),
           Prepare(4), Measure(4, 'Z', key='k2'),
           bell_prep_box(2, 1),
           Correction('Z', 1, {'k1'}), Correction('X', 1, {'k2'}),
           Gate('H', (2,)), Gate('CZ', (1, 2)),
           Measure(1, 'X', key='j1'), Measure(2, 'X', key='j2')]
    start = Circuit(4, ops, name='generalized_bell_basis')
    trace = RewriteTrace(start)
    return trace.apply(
        insert_rotation_pair(qubit=1, index=6, gate='UX', angle=angle),
        commute_ux_z(index=5),
        bell_transpose(index=4),
        commute_disjoint(index=5),
        commute_disjoint(index=6),
        commute_disjoint(index=7),
        commute_ux_h(index=8),
        uncommute_uz_cz(index=9),
        commute_disjoint(index=10))


def map_rotation_to_generalized_bell(p):
    """
    Rewrite a rotation pattern into a generalized Bell measurement

    For ``xrot(φ)`` the adaptive measurement of the middle wire is
    split into ``Uz`` and an X measurement. After the Bell pair is
    identified, the Bell measurement with the adaptive ``Uz`` on its
    second wire is a measurement in the basis ``(Ux(φ)†⊗I)|Φj⟩``.
    The boxing step carries :func:`generalized_bell_basis` as the
    derivation of that basis.

    For ``zrot(θ)`` the rotation on the input commutes through the
    CZ, leaves the measurement box and heads a generalized Bell
    measurement in the basis ``(Uz(θ)†⊗I)|Φj⟩``.

    A zero angle gives the wire trace.

    Parameters
    ----------
    p : MeasurementPattern
        ``xrot`` or ``zrot`` pattern.

    Examples
    --------
    >>> trace = map_rotation_to_generalized_bell(build_pattern('xrot', 0.5))
    >>> print(trace.end.boxes[1].pretty().splitlines()[0])
    box generalized_bell (1, 2) basis (UX(0.5)†⊗I)|Φj⟩ {
    """
    a, mid = _three_line(p, 'map_rotation_to_generalized_bell')
    first, second = p.plan
    trace = RewriteTrace(pattern_to_circuit(p), name=p.name)
    if first.basis == second.basis == 'X':
        return trace.apply(*_wire_rules(mid))

    if first.basis == 'X' and second.basis == 'EQ':
        # prepares, CZ(mid, out), CZ(a, mid), measure a, measure mid
        return trace.apply(
            equatorial_to_uz_x(index=5),
            insert_hh(qubit=mid, index=3),
            box_bell_prep(index=0),
            box_generalized_bell(index=1),
            support=generalized_bell_basis(-second.angle))

    if first.basis == 'EQ' and second.basis == 'X' and not first.deps:
        return trace.apply(
            equatorial_to_uz_x(index=4),
            commute_uz_cz(index=3),
            insert_hh(qubit=mid, index=3),
            commute_disjoint(index=4),
            box_bell_prep(index=0),
            box_bell_meas(index=2),
            box_generalized_bell(index=1))

    raise PatternMismatchError(
        "{} is neither an x nor a z rotation pattern".format(p.name))


def _swap_rule(c, index):
    """
    Rule that swaps the operations at ``index`` and ``index + 1``
    """
    a, b = c.ops[index:index + 2]
    if not set(a.qubits) & set(b.qubits):
        return commute_disjoint(index=index)
    if all(isinstance(op, Gate) and op.name in _DIAGONAL for op in (a, b)):
        return commute_diagonal(index=index)
    raise PatternMismatchError(
        "Cannot swap '{}' and '{}'".format(a.pretty(), b.pretty()))


def _move(trace, src, dst):
    """
    Move the operation at ``src`` to ``dst`` by adjacent swaps
    """
    step = -1 if dst < src else 1
    for k in range(src, dst, step):
        index = k - 1 if step < 0 else k
        trace.apply(_swap_rule(trace.end, index))


def _reorder(trace, target):
    """
    Bring the operations of the end circuit into the order of target
    """
    for i, op in enumerate(target.ops):
        try:
            k = trace.end.ops.index(op, i)
        except ValueError:
            raise PatternMismatchError(
                "'{}' is missing from {}".format(op.pretty(), trace.name))
        _move(trace, k, i)
    if trace.end != target:
        raise PatternMismatchError(
            "{} does not end in {}".format(trace.name, target.name))


def _cnot_to_pattern_trace():
    trace = RewriteTrace(cnot_gadget_circuit(), name='cnot_tqc_to_1wqc')
    trace.apply(unbox(index=4), unbox(index=3), unbox(index=1),
                unbox(index=0))
    # CNOT(5, 6) through CZ(4, 6) leaves CZ(4, 5) behind
    trace.apply(commute_disjoint(index=7), commute_cnot_cz(index=6))
    _move(trace, 5, 2)
    _move(trace, 6, 4)
    # CNOT(5, 6) through CZ(3, 5) on its control
    trace.apply(commute_cnot_cz(index=3), cnot_on_plus_plus(index=3))
    _move(trace, 9, 5)
    trace.apply(cancel_hh(index=4))
    _move(trace, 11, 8)
    trace.apply(cancel_hh(index=7))
    _reorder(trace, pattern_to_circuit(build_pattern('cnot6')))
    return trace


def map_cnot_between_models(direction):
    """
    Rewrite the teleported CNOT into the six-qubit pattern or back

    Parameters
    ----------
    direction : str
        ``'tqc_to_1wqc'`` starts from :func:`cnot_gadget_circuit`
        and ends at the circuit of ``build_pattern('cnot6')``.
        ``'1wqc_to_tqc'`` runs the inverse rules the other way.

    Examples
    --------
    >>> trace = map_cnot_between_models('tqc_to_1wqc')
    >>> trace.end.count(Gate, 'CNOT'), trace.end.count(Gate, 'H')
    (0, 0)
    >>> same_structure(circuit_to_pattern(trace.end), build_pattern('cnot6'))
    True
    """
    verify_arg(direction, 'direction', ('tqc_to_1wqc', '1wqc_to_tqc'))
    trace = _cnot_to_pattern_trace()
    if direction == 'tqc_to_1wqc':
        return trace
    start = pattern_to_circuit(build_pattern('cnot6'))
    return trace.inverted(start, name='cnot_1wqc_to_tqc')


def build_trace(name, angle=None):
    """
    One of the traces shipped with the library

    Parameters
    ----------
    name : str
        One of :data:`TRACES`.
    angle : float, optional
        Rotation angle of ``'xrot'`` and ``'zrot'``. Defaults to
        ``0.5``.
    """
    verify_arg(name, 'name', TRACES)
    if name == 'wire':
        return map_wire_to_teleportation()
    if name in ('xrot', 'zrot'):
        angle = 0.5 if angle is None else angle
        return map_rotation_to_generalized_bell(build_pattern(name, angle))
    return map_cnot_between_models(name[len('cnot_'):])
