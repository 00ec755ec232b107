"""
Graph states from two-qubit measurements

Every edge of the target graph is realized by a remote CZ procedure
made of incomplete two-qubit measurements on ancillas. The schedule
packs those measurements into rounds in which no qubit is measured
twice. For procedure B the rounds come from an edge coloring of the
auxiliary graph that splits each edge in two at its ancilla. That
graph is bipartite, so it needs exactly as many colors as its largest
degree.
"""
import json
import logging
from dataclasses import dataclass, field

import networkx as nx
import pandas as pd

from .exceptions import ContractError, InvalidGraphError
from .gadgets import PROCEDURES, procedure_byproduct_rule
from .pauli import CliffordGate, PauliString
from .tableau import StabilizerTableau, tableau_from_graph
from .utils import ordered_vertices, validate_graph, verify_arg

__all__ = ['AuxGraph', 'EdgeColoring', 'Ancilla', 'ScheduledMeasurement',
           'MeasurementSchedule', 'ordered_edges', 'build_aux_graph',
           'bipartite_edge_coloring', 'build_schedule', 'execute_schedule',
           'schedule_to_json', 'graph_to_json', 'graph_from_json',
           'parse_edge_list', 'read_graph']

logger = logging.getLogger(__name__)


def ordered_edges(g):
    """
    Edges as ``(first, second)`` pairs in lexicographic order

    Endpoints are ordered by their place in
    :func:`~mbqcmap.utils.ordered_vertices`.

    Examples
    --------
    >>> ordered_edges(nx.Graph([(3, 1), (2, 1)]))
    [(1, 2), (1, 3)]
    """
    rank = {v: i for i, v in enumerate(ordered_vertices(g))}
    edges = [tuple(sorted(e, key=rank.get)) for e in g.edges]
    return sorted(edges, key=lambda e: (rank[e[0]], rank[e[1]]))


@dataclass(frozen=True, eq=False)
class AuxGraph:
    """
    Target graph with every edge split at an ancilla

    Parameters
    ----------
    base : networkx.Graph
        Target graph.
    graph : networkx.Graph
        Bipartite graph on the vertices of ``base`` and the
        ancillas.
    ancillas : tuple
        Ancilla labels ``'a1', 'a2', ...``, one per edge.
    edges : tuple
        Edges of ``base`` in the order of the ancillas.
    """
    base: nx.Graph
    graph: nx.Graph
    ancillas: tuple
    edges: tuple

    @property
    def max_degree(self):
        return max((d for _, d in self.graph.degree), default=0)

    def halves(self):
        """
        Auxiliary edges in processing order

        For the base edge ``(i, j)`` with ancilla ``a`` these are
        ``(i, a)`` then ``(a, j)``.
        """
        for (i, j), a in zip(self.edges, self.ancillas):
            yield (i, a)
            yield (a, j)


def build_aux_graph(g):
    """
    Split every edge of a graph at a fresh ancilla

    Examples
    --------
    >>> aux = build_aux_graph(nx.complete_graph(3))
    >>> aux.ancillas, aux.max_degree
    (('a1', 'a2', 'a3'), 2)
    >>> nx.is_bipartite(aux.graph), sorted(d for _, d in aux.graph.degree)
    (True, [2, 2, 2, 2, 2, 2])
    """
    validate_graph(g)
    edges = ordered_edges(g)
    ancillas = tuple('a{}'.format(k) for k in range(1, len(edges) + 1))
    clash = set(ancillas) & set(g.nodes)
    if clash:
        raise InvalidGraphError(
            "Vertex labels {} are reserved for ancillas".format(
                sorted(clash)))
    aux = nx.Graph()
    aux.add_nodes_from(ordered_vertices(g), ancilla=False)
    aux.add_nodes_from(ancillas, ancilla=True)
    for (i, j), a in zip(edges, ancillas):
        aux.add_edge(i, a)
        aux.add_edge(a, j)
    return AuxGraph(g, aux, ancillas, tuple(edges))


@dataclass(frozen=True)
class EdgeColoring:
    """
    Colors ``1..n_colors`` of the edges of a graph

    ``colors`` maps each edge, as a frozenset of its endpoints, to
    its color.
    """
    colors: dict
    n_colors: int

    def __getitem__(self, edge):
        return self.colors[frozenset(edge)]

    def is_proper(self):
        seen = set()
        for edge, c in self.colors.items():
            for v in edge:
                if (v, c) in seen:
                    return False
                seen.add((v, c))
        return True


def _flip_chain(at, colors, start, alpha, beta):
    """
    Swap alpha and beta along the alternating path leaving start
    """
    path = []
    node, c = start, alpha
    while c in at[node]:
        nxt = at[node][c]
        path.append((node, nxt, c))
        node, c = nxt, beta if c == alpha else alpha
    for u, v, c in path:
        del at[u][c]
        del at[v][c]
    for u, v, c in path:
        new = beta if c == alpha else alpha
        at[u][new] = v
        at[v][new] = u
        colors[frozenset((u, v))] = new
    return len(path)


def bipartite_edge_coloring(aux):
    """
    Color the edges of the auxiliary graph with ``Δ`` colors

    Edges are colored in the order of :meth:`AuxGraph.halves`. An
    edge ``(u, v)`` takes the smallest color free at both ends. If
    there is none, the smallest color ``α`` free at ``u`` is freed at
    ``v`` by swapping ``α`` with ``β``, the smallest color free at
    ``v``, along the alternating path that starts at ``v``. In a
    bipartite graph that path never reaches ``u``.

    Parameters
    ----------
    aux : AuxGraph
        Graph to color.

    Examples
    --------
    >>> aux = build_aux_graph(nx.star_graph(4))
    >>> coloring = bipartite_edge_coloring(aux)
    >>> coloring.n_colors, coloring.is_proper()
    (4, True)
    """
    if not nx.is_bipartite(aux.graph):
        raise InvalidGraphError("Auxiliary graph is not bipartite")
    delta = aux.max_degree
    palette = range(1, delta + 1)
    at = {v: {} for v in aux.graph.nodes}
    colors = {}
    for u, v in aux.halves():
        alpha = next(c for c in palette if c not in at[u])
        if alpha in at[v]:
            beta = next(c for c in palette if c not in at[v])
            flipped = _flip_chain(at, colors, v, alpha, beta)
            logger.debug("edge (%s, %s): swapped %d and %d on %d edge(s)",
                         u, v, alpha, beta, flipped)
        at[u][alpha] = v
        at[v][alpha] = u
        colors[frozenset((u, v))] = alpha
    return EdgeColoring(colors, delta)


@dataclass(frozen=True)
class Ancilla:
    """
    Ancilla qubit of one edge

    ``init`` is ``'+'`` or ``'0'``, or ``'omega'`` for half of a
    ``CZ|+⟩|+⟩`` pair whose other half is ``partner``.
    """
    label: str
    edge: tuple
    init: str
    partner: str = None


@dataclass(frozen=True)
class ScheduledMeasurement:
    """
    One measurement of a schedule

    Parameters
    ----------
    observable : str
        Pauli letters, one per qubit.
    qubits : tuple
        Graph vertices and ancilla labels measured.
    edge : tuple
        Edge whose procedure the measurement belongs to.
    step : int
        Position of the measurement in that procedure.
    init : str, optional
        Preparation of the ancillas this measurement touches first.
    """
    observable: str
    qubits: tuple
    edge: tuple
    step: int
    init: str = None

    def to_dict(self):
        d = {'obs': self.observable, 'qubits': list(self.qubits)}
        if self.init is not None:
            d['init'] = self.init
        return d


@dataclass(frozen=True, eq=False)
class MeasurementSchedule:
    """
    Rounds of simultaneous measurements that make a graph state

    Parameters
    ----------
    procedure : str
        ``'A'`` or ``'B'``.
    graph : networkx.Graph
        Target graph.
    rounds : tuple
        Rounds of two-qubit measurements.
    final : tuple
        Single-qubit measurements, all in the last round.
    ancillas : tuple of Ancilla
        Ancillas in qubit order.
    variants : dict
        ``{edge: procedure id}``, the procedure each edge follows.
    """
    procedure: str
    graph: nx.Graph = field(repr=False)
    rounds: tuple
    final: tuple
    ancillas: tuple
    variants: dict = field(repr=False)

    @property
    def depth(self):
        return len(self.rounds) + 1

    def measurements(self):
        for r in self.rounds:
            yield from r
        yield from self.final


def _local_labels(edge, ancillas):
    i, j = edge
    return [i] + list(ancillas) + [j]


def _split(local, labels):
    """
    Non-identity letters of a local observable and their qubits
    """
    letters = [(p, q) for p, q in zip(local, labels) if p != 'I']
    return ''.join(p for p, _ in letters), tuple(q for _, q in letters)


def _schedule_b(g):
    aux = build_aux_graph(g)
    coloring = bipartite_edge_coloring(aux)
    rounds = [[] for _ in range(coloring.n_colors)]
    final, ancillas, variants = [], [], {}
    for (i, j), a in zip(aux.edges, aux.ancillas):
        first, second = coloring[(i, a)], coloring[(a, j)]
        variant = 'B' if first < second else 'B_swapped'
        proc = PROCEDURES[variant]
        labels = _local_labels((i, j), [a])
        ancillas.append(Ancilla(a, (i, j), proc.ancilla_init))
        variants[(i, j)] = variant
        for step, local in enumerate(proc.sequence):
            obs, qubits = _split(local, labels)
            r = coloring[qubits]
            init = proc.ancilla_init if step == 0 else None
            rounds[r - 1].append(
                ScheduledMeasurement(obs, qubits, (i, j), step, init))
        for step, local in enumerate(proc.final, len(proc.sequence)):
            obs, qubits = _split(local, labels)
            final.append(ScheduledMeasurement(obs, qubits, (i, j), step))
    return rounds, final, ancillas, variants


def _schedule_a(g):
    proc = PROCEDURES['A']
    edges = ordered_edges(g)
    conflict = nx.Graph()
    pending = {}
    ancillas, variants, final = [], {}, []
    for k, (i, j) in enumerate(edges, start=1):
        a, b = 'a{}'.format(k), 'b{}'.format(k)
        if {a, b} & set(g.nodes):
            raise InvalidGraphError(
                "Vertex labels {} and {} are reserved for ancillas".format(
                    a, b))
        labels = _local_labels((i, j), [a, b])
        ancillas.extend([Ancilla(a, (i, j), 'omega', b),
                         Ancilla(b, (i, j), 'omega', a)])
        variants[(i, j)] = 'A'
        for step, local in enumerate(proc.sequence):
            obs, qubits = _split(local, labels)
            node = (k, step)
            conflict.add_node(node)
            pending[node] = ScheduledMeasurement(obs, qubits, (i, j), step,
                                                 'omega')
        for step, local in enumerate(proc.final, len(proc.sequence)):
            obs, qubits = _split(local, labels)
            final.append(ScheduledMeasurement(obs, qubits, (i, j), step))

    # measurements conflict when they share a graph vertex
    nodes = list(conflict.nodes)
    for x in nodes:
        for y in nodes:
            if x < y and set(pending[x].qubits) & set(pending[y].qubits):
                conflict.add_edge(x, y)
    color = nx.greedy_color(conflict, strategy='largest_first')
    rounds = [[] for _ in range(max(color.values()) + 1)]
    for node in nodes:
        rounds[color[node]].append(pending[node])
    return rounds, final, ancillas, variants


def build_schedule(g, proc='B'):
    """
    Schedule the measurements that make the graph state of ``g``

    Parameters
    ----------
    g : networkx.Graph
        Target graph with at least one edge.
    proc : str
        ``'A'`` uses a ``CZ|+⟩|+⟩`` pair per edge and places the
        measurements by a greedy coloring of their conflicts. ``'B'``
        uses one ancilla per edge and places its measurements by the
        edge coloring of the auxiliary graph. An ancilla whose
        ``ZZ`` measurement comes first starts in ``|+⟩`` and ends
        with a ``Z`` measurement, otherwise it starts in ``|0⟩`` and
        ends with ``X``.

    Returns
    -------
    out : MeasurementSchedule
        Graph qubits start in ``|+⟩``.

    Examples
    --------
    >>> sched = build_schedule(nx.path_graph([1, 2, 3]), 'B')
    >>> sched.depth, [len(r) for r in sched.rounds], len(sched.final)
    (3, [2, 2], 2)
    >>> build_schedule(nx.star_graph(3), 'A').depth
    4
    """
    verify_arg(proc, 'proc', ('A', 'B'))
    validate_graph(g)
    if proc == 'A':
        rounds, final, ancillas, variants = _schedule_a(g)
    else:
        rounds, final, ancillas, variants = _schedule_b(g)
    sched = MeasurementSchedule(
        proc, g, tuple(tuple(r) for r in rounds), tuple(final),
        tuple(ancillas), variants)
    logger.debug("procedure %s on %d edge(s): depth %d", proc,
                 g.number_of_edges(), sched.depth)
    return sched


def _check_round(measurements, r):
    used = set()
    for m in measurements:
        if used & set(m.qubits):
            raise ContractError(
                "Round {} measures qubit(s) {} twice".format(
                    r, sorted(map(str, used & set(m.qubits)))))
        used.update(m.qubits)


def execute_schedule(sched, policy):
    """
    Run a schedule on the stabilizer engine

    Parameters
    ----------
    sched : MeasurementSchedule
        Schedule to run.
    policy : OutcomePolicy
        Decides the outcomes.

    Returns
    -------
    tableau : StabilizerTableau
        State of the graph qubits, in the order of
        :func:`~mbqcmap.utils.ordered_vertices`.
    corrections : PauliString
        Pauli whose application gives the graph state.
    log : pandas.DataFrame
        One row per measurement with the columns ``round``,
        ``observable``, ``qubits`` and ``outcome``.

    Raises
    ------
    ContractError
        If a round measures a qubit twice, or the corrected state is
        not the graph state.

    Examples
    --------
    >>> from mbqcmap.policy import OutcomePolicy
    >>> sched = build_schedule(nx.Graph([(1, 2)]), 'B')
    >>> t, c, log = execute_schedule(sched, OutcomePolicy.force([0] * 3))
    >>> t.same_group(tableau_from_graph(sched.graph)), c
    (True, PauliString('+II'))
    """
    vertices = ordered_vertices(sched.graph)
    labels = vertices + [a.label for a in sched.ancillas]
    index = {q: i for i, q in enumerate(labels)}
    n = len(labels)

    symbols = ['+'] * len(vertices)
    symbols += ['+' if a.init == 'omega' else a.init for a in sched.ancillas]
    t = StabilizerTableau.from_symbols(''.join(symbols))
    for a in sched.ancillas:
        if a.init == 'omega' and index[a.label] < index[a.partner]:
            t = t.apply_gate(
                CliffordGate('CZ', (index[a.label], index[a.partner])))

    rows = []
    outcomes = {edge: {} for edge in sched.variants}
    rounds = list(sched.rounds) + [sched.final]
    for r, measurements in enumerate(rounds, start=1):
        _check_round(measurements, r)
        for m in measurements:
            obs = PauliString.on(n, {index[q]: p
                                     for q, p in zip(m.qubits,
                                                     m.observable)})
            outcome, t = t.measure(obs, policy)
            outcomes[m.edge][m.step] = outcome
            rows.append({'round': r, 'observable': m.observable,
                         'qubits': m.qubits, 'outcome': outcome})
        logger.debug("round %d: %d measurement(s)", r, len(measurements))

    for a in reversed(sched.ancillas):
        t = t.discard(index[a.label])

    corrections = PauliString.identity(len(vertices))
    rules = {}
    for edge, variant in sched.variants.items():
        if variant not in rules:
            rules[variant] = procedure_byproduct_rule(variant)
        bits = [outcomes[edge][s] for s in range(len(outcomes[edge]))]
        local = rules[variant].evaluate(bits)
        i, j = (index[q] for q in edge)
        corrections = corrections * PauliString.on(
            len(vertices), {i: local.letter(0), j: local.letter(1)})
    corrections = corrections.unsigned()

    if not t.apply_pauli(corrections).same_group(
            tableau_from_graph(sched.graph)):
        raise ContractError(
            "Procedure {} did not make the graph state".format(
                sched.procedure))
    log = pd.DataFrame(rows, columns=['round', 'observable', 'qubits',
                                      'outcome'])
    return t, corrections, log


def schedule_to_json(sched):
    """
    Serialize a schedule

    Examples
    --------
    >>> d = json.loads(schedule_to_json(build_schedule(nx.Graph([(1, 2)]))))
    >>> list(d)
    ['procedure', 'rounds', 'final', 'depth', 'ancillas']
    >>> d['rounds'][0], d['depth']
    ([{'obs': 'ZZ', 'qubits': [1, 'a1'], 'init': '+'}], 3)
    """
    ancillas = []
    for a in sched.ancillas:
        d = {'label': a.label, 'edge': list(a.edge), 'init': a.init}
        if a.partner is not None:
            d['partner'] = a.partner
        ancillas.append(d)
    return json.dumps({
        'procedure': sched.procedure,
        'rounds': [[m.to_dict() for m in r] for r in sched.rounds],
        'final': [m.to_dict() for m in sched.final],
        'depth': sched.depth,
        'ancillas': ancillas})


def graph_to_json(g):
    return json.dumps({'vertices': ordered_vertices(g),
                       'edges': [list(e) for e in ordered_edges(g)]})


def _checked_graph(vertices, edges):
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise InvalidGraphError("Edge {} needs two endpoints".format(e))
        key = frozenset(e)
        if key in seen:
            raise InvalidGraphError(
                "Graph has a duplicate edge ({}, {})".format(*e))
        seen.add(key)
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(tuple(e) for e in edges)
    validate_graph(g)
    return g


def graph_from_json(text):
    """
    Read ``{"vertices": [...], "edges": [[a, b], ...]}``
    """
    try:
        d = json.loads(text)
        vertices, edges = d.get('vertices', []), d['edges']
    except (ValueError, KeyError, AttributeError) as err:
        raise InvalidGraphError("Bad graph JSON: {}".format(err)) from err
    return _checked_graph(vertices, edges)


def _label(token):
    try:
        return int(token)
    except ValueError:
        return token


def parse_edge_list(text):
    """
    Read a graph from lines of ``u v`` pairs

    Blank lines and text after ``#`` are ignored. Integer labels
    become ``int``.

    Examples
    --------
    >>> ordered_edges(parse_edge_list('1 2\\n2 3  # tail'))
    [(1, 2), (2, 3)]
    """
    edges = []
    for line in text.splitlines():
        tokens = line.split('#', 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise InvalidGraphError(
                "Expected 'u v', got {!r}".format(line.strip()))
        edges.append([_label(t) for t in tokens])
    return _checked_graph([], edges)


def read_graph(text):
    """
    Graph from JSON or edge-list text
    """
    if text.lstrip().startswith('{'):
        return graph_from_json(text)
    return parse_edge_list(text)
