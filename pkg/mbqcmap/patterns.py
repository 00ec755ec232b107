"""
One-way measurement patterns

A pattern is a graph whose non-input qubits start in ``|+⟩``, a
controlled-phase gate on every edge, and an ordered plan of
single-qubit measurements. Measurement angles may change sign
depending on earlier outcomes. What is left on the output qubits is
the intended unitary applied to the input, up to a Pauli byproduct
that is a parity function of the outcomes.

Qubits are labelled ``1, 2, ...`` as in the usual drawings of the
patterns.
"""
import itertools
import json
import logging
from dataclasses import asdict, dataclass, field
from functools import lru_cache, reduce

import networkx as nx
import numpy as np
import pandas as pd

from .exceptions import (ContractError, DimensionError,
                         ZeroProbabilityError)
from .frames import ByproductRule, rule_from_branches
from .options import get_option
from .pauli import PauliString
from .policy import OutcomePolicy
from .statevector import (MeasurementBasis, gate_matrix, max_entangled,
                          fidelity, spanning_inputs, uz)
from .tableau import tableau_from_graph, delete_qubit_z
from .utils import (all_bitstrings, ordered_vertices, parity,
                    validate_graph, verify_arg)

__all__ = ['PlanStep', 'MeasurementPattern', 'ResourceCount',
           'build_pattern', 'line_pattern', 'execute_pattern',
           'derive_byproduct_rule', 'verify_pattern', 'compose_patterns',
           'tensor_patterns', 'eliminate_wires', 'resource_count',
           'compare_resources', 'carve_graph', 'carve_pattern',
           'pattern_to_json', 'pattern_from_json', 'PATTERN_KINDS']

logger = logging.getLogger(__name__)

PATTERN_KINDS = ('wire', 'xrot', 'zrot', 'euler', 'cnot6', 'cnot_square',
                 'remote_cz')

#: Lattice sites kept from a 5x3 cluster for the square CNOT
SQUARE_CNOT_SITES = {
    (0, 0): 1, (0, 2): 5,
    (1, 0): 2, (1, 1): 3, (1, 2): 4,
    (2, 1): 6,
    (3, 1): 7,
    (4, 0): 8, (4, 1): 9, (4, 2): 10,
}

#: Qubits of the lattice CNOT, used in resource comparisons only
LATTICE_CNOT_QUBITS = 15


@dataclass(frozen=True)
class PlanStep:
    """
    One measurement of a pattern

    Parameters
    ----------
    qubit : int
        Label of the measured qubit.
    basis : str
        ``'X'``, ``'Z'`` or ``'EQ'`` (equatorial).
    angle : float
        Base angle ``ω`` of an equatorial measurement. The angle
        measured is ``(-1)**s * ω`` where ``s`` is the parity of the
        outcomes of the steps in ``deps``.
    deps : frozenset
        0-based indices of earlier steps.
    """
    qubit: int
    basis: str = 'X'
    angle: float = 0.0
    deps: frozenset = frozenset()

    def __post_init__(self):
        verify_arg(self.basis, 'basis', ('X', 'Z', 'EQ'))
        if not np.isfinite(self.angle):
            raise ContractError("Angle must be finite")
        object.__setattr__(self, 'deps', frozenset(self.deps))

    def resolve(self, outcomes, flip=False):
        """
        Measurement basis given the earlier outcomes
        """
        if self.basis == 'X':
            return MeasurementBasis.x()
        elif self.basis == 'Z':
            return MeasurementBasis.z()
        sign = (-1) ** (parity(outcomes, self.deps) + int(flip))
        return MeasurementBasis.equatorial(sign * self.angle)


@dataclass(frozen=True)
class ResourceCount:
    """
    Qubit counts of a pattern

    ``width`` is the number of logical wires and ``length`` the
    number of qubits on the longest input to output path.
    """
    total_qubits: int
    measured_qubits: int
    width: int
    length: int


@dataclass(frozen=True, eq=False)
class MeasurementPattern:
    """
    Measurement pattern

    Parameters
    ----------
    graph : networkx.Graph
        Entanglement graph on integer labels.
    inputs : tuple
        Input qubits, in the order of the input register.
    outputs : tuple
        Output qubits, in the order of the output register.
    plan : tuple of PlanStep
        Measurements in time order, one per non-output qubit.
    byproduct : ByproductRule
        Correction left on the outputs.
    unitary : numpy.ndarray
        Intended unitary on the input register.
    name : str
        Name of the pattern.
    targets : tuple, optional
        For line patterns, the base angle of each step.
    """
    graph: nx.Graph
    inputs: tuple
    outputs: tuple
    plan: tuple
    byproduct: ByproductRule = None
    unitary: np.ndarray = field(default=None, repr=False)
    name: str = 'pattern'
    targets: tuple = None

    def __post_init__(self):
        object.__setattr__(self, 'inputs', tuple(self.inputs))
        object.__setattr__(self, 'outputs', tuple(self.outputs))
        object.__setattr__(self, 'plan', tuple(self.plan))
        if self.targets is not None:
            object.__setattr__(self, 'targets', tuple(self.targets))
        self._validate()

    def _validate(self):
        validate_graph(self.graph, allow_empty=True)
        nodes = set(self.graph.nodes)
        for q in self.inputs + self.outputs:
            if q not in nodes:
                raise ContractError("Qubit {} is not in the graph".format(q))
        measured = [step.qubit for step in self.plan]
        if len(set(measured)) != len(measured):
            raise ContractError("A qubit is measured twice")
        if set(measured) & set(self.outputs):
            raise ContractError("Output qubits are never measured")
        if set(measured) | set(self.outputs) != nodes:
            raise ContractError(
                "Every non-output qubit needs one measurement")
        for i, step in enumerate(self.plan):
            if any(not 0 <= d < i for d in step.deps):
                raise ContractError(
                    "Step {} depends on a later step".format(i + 1))
        if (self.byproduct is not None and
                self.byproduct.n_outputs != len(self.outputs)):
            raise DimensionError("Byproduct rule does not fit the outputs")

    @property
    def n_steps(self):
        return len(self.plan)

    def with_byproduct(self, rule):
        return MeasurementPattern(self.graph, self.inputs, self.outputs,
                                  self.plan, rule, self.unitary, self.name,
                                  self.targets)

    def reorder(self, order):
        """
        Pattern with the plan steps taken in a different order

        Parameters
        ----------
        order : list of int
            ``order[i]`` is the old index of the new step ``i``.
        """
        new_index = {old: new for new, old in enumerate(order)}
        plan = [PlanStep(self.plan[old].qubit, self.plan[old].basis,
                         self.plan[old].angle,
                         {new_index[d] for d in self.plan[old].deps})
                for old in order]
        rule = self.byproduct
        if rule is not None:
            rule = ByproductRule(
                [{new_index[s] for s in xs} for xs in rule.x],
                [{new_index[s] for s in zs} for zs in rule.z],
                rule.labels)
        return MeasurementPattern(self.graph, self.inputs, self.outputs,
                                  plan, rule, self.unitary, self.name,
                                  self.targets)

    def relabel(self, mapping):
        """
        Pattern with qubit labels replaced through ``mapping``
        """
        graph = nx.relabel_nodes(self.graph, mapping)
        plan = [PlanStep(mapping[s.qubit], s.basis, s.angle, s.deps)
                for s in self.plan]
        outputs = [mapping[q] for q in self.outputs]
        rule = self.byproduct
        if rule is not None:
            rule = rule.relabel(tuple(outputs))
        return MeasurementPattern(graph, [mapping[q] for q in self.inputs],
                                  outputs, plan, rule, self.unitary,
                                  self.name, self.targets)


def _execute(p, state, policy, n_extra=0, flips=frozenset()):
    """
    Run a pattern on a state that holds the inputs and passive qubits

    The state has the input register first followed by ``n_extra``
    qubits that the pattern does not touch. The returned state has
    the outputs first, in order, followed by the passive qubits.
    """
    k = len(p.inputs)
    if state.n != k + n_extra:
        raise DimensionError(
            "Pattern {} takes {} input qubits, got {}".format(
                p.name, k, state.n - n_extra))

    inputs = set(p.inputs)
    others = [v for v in ordered_vertices(p.graph) if v not in inputs]
    if others:
        state = state.append('+' * len(others))
    order = list(p.inputs) + [None] * n_extra + others
    pos = {label: i for i, label in enumerate(order) if label is not None}
    for u, v in sorted(tuple(sorted(e)) for e in p.graph.edges()):
        state = state.apply_gate('CZ', (pos[u], pos[v]))

    outcomes, prob = [], 1.0
    for i, step in enumerate(p.plan):
        basis = step.resolve(outcomes, flip=i in flips)
        q = pos[step.qubit]
        outcome, p_step, state = state.measure(q, basis, policy, drop=True)
        outcomes.append(outcome)
        prob *= p_step
        order.pop(q)
        pos = {label: j for j, label in enumerate(order)
               if label is not None}

    perm = ([pos[q] for q in p.outputs] +
            [j for j, label in enumerate(order) if label is None])
    return state.permute(perm), outcomes, prob


def execute_pattern(p, state, policy):
    """
    Run a pattern on an input state

    Parameters
    ----------
    p : MeasurementPattern
        Pattern to run.
    state : StateVector
        Input register, one qubit per pattern input.
    policy : OutcomePolicy
        Decides the measurement outcomes.

    Returns
    -------
    output : StateVector
        State of the outputs, in order.
    outcomes : list
        Outcome of each plan step.
    byproduct : PauliString
        Correction predicted by the pattern's byproduct rule.

    Examples
    --------
    >>> from mbqcmap.statevector import prepare
    >>> wire = build_pattern('wire')
    >>> out, outcomes, byproduct = execute_pattern(
    ...     wire, prepare(1, '0'), OutcomePolicy.force([0, 1]))
    >>> outcomes, byproduct
    ([0, 1], PauliString('+X'))
    """
    output, outcomes, _ = _execute(p, state, policy)
    byproduct = None
    if p.byproduct is not None:
        byproduct = p.byproduct.evaluate(outcomes)
    logger.debug("pattern %s: outcomes %s", p.name, outcomes)
    return output, outcomes, byproduct


def _pad(pauli, extra):
    """
    Pauli followed by identities on ``extra`` qubits
    """
    return PauliString(np.concatenate([pauli.x, np.zeros(extra)]),
                       np.concatenate([pauli.z, np.zeros(extra)]),
                       pauli.phase)


def _fit_pauli(actual, ideal, k):
    """
    Pauli Q on the first k qubits with actual = (Q ⊗ I) ideal
    """
    tol = get_option('tolerance')
    for letters in itertools.product('IXZY', repeat=k):
        q = PauliString.on(actual.n, dict(enumerate(letters)))
        if fidelity(ideal.apply_pauli(q), actual) >= 1 - tol:
            return q.restrict(range(k))
    return None


def derive_byproduct_rule(p, unitary=None):
    """
    Find the Pauli correction of every branch and fit a parity rule

    Every branch is run once on a register maximally entangled with
    reference qubits, which checks all inputs at once.

    Parameters
    ----------
    p : MeasurementPattern
        Pattern to analyse.
    unitary : array_like, optional
        Intended unitary. Defaults to ``p.unitary``.

    Raises
    ------
    ContractError
        If some branch is not the unitary up to a Pauli, or the
        corrections are not parities of the outcomes.
    """
    unitary = p.unitary if unitary is None else np.asarray(unitary)
    if unitary is None:
        raise ContractError("Pattern {} has no intended unitary".format(
            p.name))
    k = len(p.inputs)
    choi = max_entangled(k)
    ideal = choi.apply_unitary(unitary, range(k))
    branches = {}
    for bits in all_bitstrings(p.n_steps):
        policy = OutcomePolicy.force(bits, strict=True)
        try:
            output, _, _ = _execute(p, choi, policy, n_extra=k)
        except ZeroProbabilityError:
            continue
        q = _fit_pauli(output, ideal, len(p.outputs))
        if q is None:
            raise ContractError(
                "Branch {} of pattern {} is not the intended unitary up "
                "to a Pauli correction".format(bits, p.name))
        branches[bits] = q
    logger.debug("pattern %s: fitted %d branches", p.name, len(branches))
    return rule_from_branches(branches, p.n_steps, labels=p.outputs)


def verify_pattern(p, inputs=None, seed=0):
    """
    Check every branch against the byproduct rule

    Parameters
    ----------
    p : MeasurementPattern
        Pattern with a byproduct rule and an intended unitary.
    inputs : list of StateVector, optional
        Input states. By default a register entangled with reference
        qubits, which covers all inputs.
    seed : int
        Seed for the random states when ``inputs`` is ``'spanning'``.

    Returns
    -------
    out : pandas.DataFrame
        One row per branch with columns ``branch``, ``probability``
        and ``fidelity`` (the worst over the inputs).
    """
    k = len(p.inputs)
    if inputs is None:
        cases = [(max_entangled(k), k)]
    elif isinstance(inputs, str):
        verify_arg(inputs, 'inputs', ('spanning',))
        cases = [(s, 0) for s in spanning_inputs(k, seed)]
    else:
        cases = [(s, 0) for s in inputs]

    rows = []
    for bits in all_bitstrings(p.n_steps):
        worst, prob = 1.0, None
        for state, extra in cases:
            policy = OutcomePolicy.force(bits, strict=True)
            try:
                output, _, prob = _execute(p, state, policy,
                                           n_extra=extra)
            except ZeroProbabilityError:
                worst, prob = np.nan, 0.0
                break
            expected = state.apply_unitary(p.unitary, range(k))
            correction = _pad(p.byproduct.evaluate(bits), extra)
            worst = min(worst,
                        fidelity(expected.apply_pauli(correction), output))
        rows.append({'branch': ''.join(map(str, bits)),
                     'probability': prob,
                     'fidelity': worst})
    return pd.DataFrame(rows, columns=['branch', 'probability',
                                       'fidelity'])


def _frame_recursion(targets):
    """
    Adaptive dependencies of a line pattern

    The frame before step ``k`` is ``X**a Z**b`` on the qubit being
    measured, with ``a`` and ``b`` parities over sets of steps.
    Measuring with the sign ``(-1)**a`` undoes the frame, and leaves
    the frame ``X**(s_k + b) Z**a`` on the next qubit.
    """
    a, b = frozenset(), frozenset()
    plan_deps = []
    for k, _ in enumerate(targets):
        plan_deps.append(a)
        a, b = frozenset({k}) ^ b, a
    return plan_deps


def _line_unitary(targets):
    h = gate_matrix('H')
    return reduce(lambda u, t: h @ uz(-t) @ u, targets,
                  np.eye(2, dtype=complex))


def line_pattern(targets, name='line'):
    """
    Line of ``len(targets) + 1`` qubits

    Step ``k`` measures qubit ``k + 1`` at the base angle
    ``targets[k]`` and contributes ``H Uz(-targets[k])`` to the
    unitary, so two steps give ``Ux(-t2) Uz(-t1)``.

    Examples
    --------
    >>> p = line_pattern([0, -0.5])
    >>> [(s.qubit, s.basis, s.angle, sorted(s.deps)) for s in p.plan]
    [(1, 'X', 0.0, []), (2, 'EQ', -0.5, [0])]
    >>> p.byproduct.formulas()
    {3: 'X^{j2} Z^{j1}'}
    """
    targets = tuple(float(t) for t in targets)
    m = len(targets)
    graph = nx.path_graph(range(1, m + 2))
    deps = _frame_recursion(targets)
    plan = []
    for k, t in enumerate(targets):
        if t == 0:
            plan.append(PlanStep(k + 1, 'X'))
        else:
            plan.append(PlanStep(k + 1, 'EQ', t, deps[k]))
    p = MeasurementPattern(graph, (1,), (m + 1,), plan,
                           unitary=_line_unitary(targets), name=name,
                           targets=targets)
    return p.with_byproduct(derive_byproduct_rule(p))


def carve_graph(shape, keep):
    """
    Cut a pattern graph out of a rectangular cluster

    Parameters
    ----------
    shape : tuple
        ``(rows, columns)`` of the cluster.
    keep : dict
        ``{(row, column): label}`` of the sites that stay. All other
        sites are removed by Z measurements.

    Returns
    -------
    out : networkx.Graph
        Induced graph on the kept sites, relabelled.
    """
    lattice = nx.grid_2d_graph(*shape)
    missing = set(keep) - set(lattice.nodes)
    if missing:
        raise DimensionError(
            "Sites {} are not in the lattice".format(sorted(missing)))
    return nx.relabel_nodes(lattice.subgraph(keep).copy(), keep)


def carve_pattern(shape, keep, policy):
    """
    Carve a cluster by Z measurements on its stabilizer tableau

    Returns
    -------
    graph : networkx.Graph
        The carved graph, see :func:`carve_graph`.
    tableau : StabilizerTableau
        State of the kept sites, in sorted site order.
    correction : PauliString
        Accumulated Z corrections. The tableau with the correction
        applied is the graph state of the carved graph.
    """
    lattice = nx.grid_2d_graph(*shape)
    t = tableau_from_graph(lattice)
    sites = ordered_vertices(lattice)
    correction = PauliString.identity(len(sites))
    for q in reversed(range(len(sites))):
        if sites[q] in keep:
            continue
        _, t, c = delete_qubit_z(t, q, policy)
        rest = [i for i in range(len(sites)) if i != q]
        correction = correction.restrict(rest) * c
        sites.pop(q)
    return carve_graph(shape, keep), t, correction.unsigned()


def _cnot6():
    graph = nx.Graph([(1, 3), (3, 5), (2, 4), (4, 6), (4, 5)])
    plan = [PlanStep(q, 'X') for q in (1, 2, 3, 4)]
    return MeasurementPattern(graph, (1, 2), (5, 6), plan,
                              unitary=gate_matrix('CNOT'), name='cnot6')


def _cnot_square():
    graph = carve_graph((5, 3), SQUARE_CNOT_SITES)
    plan = [PlanStep(q, 'X') for q in (1, 2, 3, 4, 6, 7, 8, 9)]
    return MeasurementPattern(graph, (1, 8), (5, 10), plan,
                              unitary=gate_matrix('CNOT'),
                              name='cnot_square')


def _remote_cz():
    graph = nx.path_graph([1, 2, 3, 4])
    plan = [PlanStep(2, 'X'), PlanStep(3, 'X')]
    return MeasurementPattern(graph, (1, 4), (1, 4), plan,
                              unitary=gate_matrix('CZ'), name='remote_cz')


@lru_cache(maxsize=None)
def _build(kind, params):
    if kind == 'wire':
        return line_pattern([0, 0], name='wire')
    elif kind == 'xrot':
        phi, = params
        return line_pattern([0, -phi], name='xrot')
    elif kind == 'zrot':
        theta, = params
        return line_pattern([-theta, 0], name='zrot')
    elif kind == 'euler':
        psi, theta, phi = params
        return line_pattern([-phi, -theta, -psi, 0], name='euler')

    p = {'cnot6': _cnot6,
         'cnot_square': _cnot_square,
         'remote_cz': _remote_cz}[kind]()
    return p.with_byproduct(derive_byproduct_rule(p))


_N_PARAMS = {'wire': 0, 'xrot': 1, 'zrot': 1, 'euler': 3, 'cnot6': 0,
             'cnot_square': 0, 'remote_cz': 0}


def build_pattern(kind, *params):
    """
    Build one of the standard patterns

    Parameters
    ----------
    kind : str
        One of ``'wire'``, ``'xrot'`` (angle φ), ``'zrot'``
        (angle θ), ``'euler'`` (angles ψ, θ, φ for
        ``Uz(ψ) Ux(θ) Uz(φ)``), ``'cnot6'``, ``'cnot_square'`` and
        ``'remote_cz'``.
    params : float
        Angles in radians.

    Examples
    --------
    >>> wire = build_pattern('wire')
    >>> wire.inputs, wire.outputs, [s.qubit for s in wire.plan]
    ((1,), (3,), [1, 2])
    >>> build_pattern('xrot', 0.25).plan[1].deps
    frozenset({0})
    >>> build_pattern('remote_cz').byproduct.formulas()
    {1: 'Z^{j2}', 4: 'Z^{j1}'}
    """
    verify_arg(kind, 'kind', PATTERN_KINDS)
    if len(params) != _N_PARAMS[kind]:
        raise ValueError("Pattern {} takes {} angle(s), got {}".format(
            kind, _N_PARAMS[kind], len(params)))
    params = tuple(float(a) for a in params)
    if not all(np.isfinite(params)):
        raise ContractError("Angles must be finite")
    return _build(kind, params)


def tensor_patterns(a, b):
    """
    Run two patterns side by side

    The qubits of ``b`` are renumbered after those of ``a``. The
    input and output registers are those of ``a`` followed by those
    of ``b``.
    """
    offset = max(a.graph.nodes)
    mapping = {q: q + offset for q in b.graph.nodes}
    b2 = b.relabel(mapping)
    graph = nx.union(a.graph, b2.graph)
    plan = list(a.plan) + [
        PlanStep(s.qubit, s.basis, s.angle, {d + a.n_steps for d in s.deps})
        for s in b2.plan]
    rule = a.byproduct.tensor(b2.byproduct.shift(a.n_steps))
    return MeasurementPattern(
        graph, a.inputs + b2.inputs, a.outputs + b2.outputs, plan, rule,
        np.kron(a.unitary, b.unitary), '{}|{}'.format(a.name, b.name))


def _adaptive_steps(p):
    tol = get_option('tolerance')
    steps = []
    for i, s in enumerate(p.plan):
        if s.basis != 'EQ':
            continue
        r = np.mod(s.angle, np.pi / 2)
        if min(r, np.pi / 2 - r) > tol:
            steps.append(i)
    return steps


def _frame_response(b, pauli):
    """
    How a Pauli on the inputs of b passes through b

    Finds the smallest set F of adaptive steps of ``b`` and a Pauli
    Q such that running ``b`` with the angles of F negated on
    ``pauli·ψ`` gives ``Q·U·ψ`` on the all-zero branch.
    """
    k = len(b.inputs)
    choi = max_entangled(k)
    ideal = choi.apply_unitary(b.unitary, range(k))
    start = choi.apply_pauli(_pad(pauli, k))
    steps = _adaptive_steps(b)
    for size in range(len(steps) + 1):
        for flips in itertools.combinations(steps, size):
            policy = OutcomePolicy.force([0] * b.n_steps, strict=True)
            try:
                output, _, _ = _execute(b, start, policy, n_extra=k,
                                     flips=frozenset(flips))
            except ZeroProbabilityError:
                continue
            q = _fit_pauli(output, ideal, len(b.outputs))
            if q is not None:
                return frozenset(flips), q
    raise ContractError(
        "Cannot pass {} through pattern {}".format(pauli, b.name))


def compose_patterns(a, b):
    """
    Pattern that runs ``a`` and then ``b``

    The outputs of ``a`` become the inputs of ``b``. The byproduct
    of ``a`` is pushed through ``b``: for a Clifford ``b`` by
    conjugation, otherwise by adapting the signs of the measurement
    angles of ``b``.

    Examples
    --------
    >>> p = compose_patterns(build_pattern('wire'), build_pattern('wire'))
    >>> p.graph.number_of_nodes(), p.n_steps
    (5, 4)
    """
    if len(a.outputs) != len(b.inputs):
        raise DimensionError(
            "{} has {} outputs but {} has {} inputs".format(
                a.name, len(a.outputs), b.name, len(b.inputs)))

    name = '{}+{}'.format(a.name, b.name)
    if a.targets is not None and b.targets is not None:
        return line_pattern(a.targets + b.targets, name=name)

    offset = max(a.graph.nodes)
    fresh = iter(range(offset + 1, offset + 1 + b.graph.number_of_nodes()))
    mapping = dict(zip(b.inputs, a.outputs))
    for q in ordered_vertices(b.graph):
        if q not in mapping:
            mapping[q] = next(fresh)
    b2 = b.relabel(mapping)

    k = len(b.inputs)
    images, deps = {}, [frozenset() for _ in b.plan]
    for i in range(k):
        for letter, frame in (('X', a.byproduct.x[i]),
                              ('Z', a.byproduct.z[i])):
            flips, q = _frame_response(b, PauliString.on(k, {i: letter}))
            images[(letter, i)] = q
            for f in flips:
                deps[f] = deps[f] ^ frame

    plan = list(a.plan) + [
        PlanStep(s.qubit, s.basis, s.angle,
                 {d + a.n_steps for d in s.deps} ^ deps[i])
        for i, s in enumerate(b2.plan)]
    carried = a.byproduct.propagate(images, labels=b2.outputs)
    rule = b2.byproduct.shift(a.n_steps).combine(carried)
    graph = nx.compose(a.graph, b2.graph)
    return MeasurementPattern(graph, a.inputs, b2.outputs, plan, rule,
                              b.unitary @ a.unitary, name)


def eliminate_wires(p):
    """
    Drop pairs of consecutive X measurements from a line pattern

    Two X measurements in a row carry the state two sites down the
    line without changing it.

    Examples
    --------
    >>> p = compose_patterns(build_pattern('zrot', 0.3),
    ...                      build_pattern('xrot', 0.2))
    >>> resource_count(eliminate_wires(p)).measured_qubits
    2
    """
    if p.targets is None:
        raise ContractError("Only line patterns have wires to remove")
    targets = list(p.targets)
    kept = []
    i = 0
    while i < len(targets):
        if (i + 1 < len(targets) and targets[i] == 0 and
                targets[i + 1] == 0):
            i += 2
            continue
        kept.append(targets[i])
        i += 1
    return line_pattern(kept, name=p.name)


def resource_count(p):
    """
    Count the qubits of a pattern

    Examples
    --------
    >>> resource_count(build_pattern('euler', 0.1, 0.2, 0.3))
    ResourceCount(total_qubits=5, measured_qubits=4, width=1, length=5)
    """
    total = p.graph.number_of_nodes()
    length = max(
        nx.shortest_path_length(p.graph, i, o) + 1
        for i, o in zip(p.inputs, p.outputs))
    return ResourceCount(total, p.n_steps, len(p.inputs), length)


def compare_resources():
    """
    Qubit counts of the standard two-qubit and rotation units

    Returns
    -------
    out : pandas.DataFrame
        Columns ``unit``, ``total_qubits``, ``measured_qubits``,
        ``width`` and ``length``.
    """
    unit = eliminate_wires(compose_patterns(build_pattern('zrot', 0.3),
                                            build_pattern('xrot', 0.7)))
    rows = []
    for name, p in [('remote_cz', build_pattern('remote_cz')),
                    ('cnot6', build_pattern('cnot6')),
                    ('cnot_square', build_pattern('cnot_square')),
                    ('ux_uz_unit', unit),
                    ('euler', build_pattern('euler', 0.1, 0.2, 0.3))]:
        count = resource_count(p)
        rows.append(dict(unit=name, **asdict(count)))
    rows.append({'unit': 'cnot_lattice',
                 'total_qubits': LATTICE_CNOT_QUBITS,
                 'measured_qubits': LATTICE_CNOT_QUBITS - 2,
                 'width': 2, 'length': None})
    return pd.DataFrame(rows, columns=['unit', 'total_qubits',
                                       'measured_qubits', 'width',
                                       'length'])


def pattern_to_json(p):
    """
    Serialize a pattern

    Angles are in radians and step numbers in ``deps`` are 1-based.
    """
    plan = []
    for s in p.plan:
        step = {'qubit': s.qubit, 'basis': s.basis}
        if s.basis == 'EQ':
            step['angle'] = s.angle
            step['deps'] = sorted(d + 1 for d in s.deps)
        plan.append(step)
    d = {'name': p.name,
         'qubits': ordered_vertices(p.graph),
         'edges': sorted(sorted(e) for e in p.graph.edges()),
         'inputs': list(p.inputs),
         'outputs': list(p.outputs),
         'plan': plan,
         'byproduct': p.byproduct.to_dict() if p.byproduct else None}
    if p.unitary is not None:
        u = np.asarray(p.unitary)
        d['unitary'] = [[[z.real, z.imag] for z in row] for row in u]
    if p.targets is not None:
        d['targets'] = list(p.targets)
    return json.dumps(d)


def pattern_from_json(text):
    """
    Inverse of :func:`pattern_to_json`
    """
    d = json.loads(text)
    graph = nx.Graph()
    graph.add_nodes_from(d['qubits'])
    graph.add_edges_from(tuple(e) for e in d['edges'])
    plan = [PlanStep(s['qubit'], s['basis'], s.get('angle', 0.0),
                     {i - 1 for i in s.get('deps', [])})
            for s in d['plan']]
    unitary = None
    if d.get('unitary') is not None:
        unitary = np.array([[complex(re, im) for re, im in row]
                            for row in d['unitary']])
    rule = None
    if d.get('byproduct') is not None:
        rule = ByproductRule.from_dict(d['byproduct'], d['outputs'])
    return MeasurementPattern(graph, d['inputs'], d['outputs'], plan, rule,
                              unitary, d.get('name', 'pattern'),
                              d.get('targets'))
