import json

import networkx as nx
import pytest

from mbqcmap.exceptions import ContractError, InvalidGraphError
from mbqcmap.policy import OutcomePolicy
from mbqcmap.scheduler import (MeasurementSchedule,
                               bipartite_edge_coloring, build_aux_graph,
                               build_schedule, execute_schedule,
                               graph_from_json, graph_to_json,
                               ordered_edges, parse_edge_list, read_graph,
                               schedule_to_json)
from mbqcmap.tableau import tableau_from_graph

GRAPHS = [
    nx.Graph([(1, 2)]),
    nx.path_graph([1, 2, 3]),
    nx.cycle_graph(5),
    nx.complete_graph(4),
    nx.star_graph(4),
    nx.petersen_graph(),
    nx.complete_bipartite_graph(2, 3),
]


def max_degree(g):
    return max(d for _, d in g.degree)


def test_aux_graph():
    aux = build_aux_graph(nx.path_graph([1, 2, 3]))
    assert aux.ancillas == ('a1', 'a2')
    assert aux.edges == ((1, 2), (2, 3))
    assert list(aux.halves()) == [(1, 'a1'), ('a1', 2), (2, 'a2'),
                                  ('a2', 3)]
    assert aux.graph.nodes['a1']['ancilla']
    assert not aux.graph.nodes[2]['ancilla']
    assert aux.max_degree == 2


def test_aux_graph_reserved_labels():
    with pytest.raises(InvalidGraphError):
        build_aux_graph(nx.Graph([('a1', 'x')]))
    with pytest.raises(InvalidGraphError):
        build_schedule(nx.Graph([('b1', 'x')]), 'A')


def test_aux_graph_rejects_bad_graphs():
    with pytest.raises(InvalidGraphError):
        build_aux_graph(nx.Graph([(1, 1)]))
    with pytest.raises(InvalidGraphError):
        build_aux_graph(nx.empty_graph(3))


@pytest.mark.parametrize('g', GRAPHS)
def test_edge_coloring(g):
    aux = build_aux_graph(g)
    coloring = bipartite_edge_coloring(aux)
    assert coloring.n_colors == max(max_degree(g), 2)
    assert coloring.is_proper()
    assert len(coloring.colors) == 2 * g.number_of_edges()
    assert set(coloring.colors.values()) <= set(
        range(1, coloring.n_colors + 1))


def test_edge_coloring_random_graphs():
    for seed in range(20):
        g = nx.gnp_random_graph(8, 0.5, seed=seed)
        if not g.number_of_edges():
            continue
        coloring = bipartite_edge_coloring(build_aux_graph(g))
        assert coloring.is_proper()
        assert coloring.n_colors == max(max_degree(g), 2)


@pytest.mark.parametrize('g', GRAPHS)
def test_schedule_b_depth(g):
    sched = build_schedule(g, 'B')
    assert sched.procedure == 'B'
    assert sched.depth == max(max_degree(g), 2) + 1
    assert len(sched.ancillas) == g.number_of_edges()
    assert len(sched.final) == g.number_of_edges()
    assert sum(len(r) for r in sched.rounds) == 2 * g.number_of_edges()
    assert set(sched.variants.values()) <= {'B', 'B_swapped'}
    for a in sched.ancillas:
        variant = sched.variants[a.edge]
        assert a.init == ('+' if variant == 'B' else '0')


def test_schedule_examples():
    assert build_schedule(nx.path_graph([1, 2, 3]), 'B').depth == 3
    assert build_schedule(nx.star_graph(4), 'B').depth == 5
    assert build_schedule(nx.star_graph(3), 'A').depth == 4
    assert build_schedule(nx.Graph([(1, 2)]), 'A').depth == 2


def test_schedule_a():
    g = nx.cycle_graph(4)
    sched = build_schedule(g, 'A')
    assert len(sched.ancillas) == 2 * g.number_of_edges()
    a1, b1 = sched.ancillas[:2]
    assert (a1.label, a1.partner) == ('a1', 'b1')
    assert (b1.label, b1.partner) == ('b1', 'a1')
    assert a1.init == 'omega'
    assert set(sched.variants.values()) == {'A'}
    # each round measures a vertex at most once
    for r in sched.rounds:
        qubits = [q for m in r for q in m.qubits]
        assert len(qubits) == len(set(qubits))


@pytest.mark.parametrize('proc', ['A', 'B'])
@pytest.mark.parametrize('g', GRAPHS)
def test_execute_schedule(g, proc):
    sched = build_schedule(g, proc)
    n_measurements = len(list(sched.measurements()))
    for seed in range(3):
        t, corrections, log = execute_schedule(
            sched, OutcomePolicy.sample(seed))
        assert t.n == g.number_of_nodes()
        assert corrections.n == g.number_of_nodes()
        assert t.apply_pauli(corrections).same_group(tableau_from_graph(g))
        assert len(log) == n_measurements
        assert log['round'].max() == sched.depth


def test_execute_schedule_forced_outcomes():
    sched = build_schedule(nx.Graph([(1, 2)]), 'B')
    t, corrections, log = execute_schedule(
        sched, OutcomePolicy.force([1, 1, 1]))
    assert list(log['outcome']) == [1, 1, 1]
    assert t.apply_pauli(corrections).same_group(
        tableau_from_graph(sched.graph))


def test_execute_schedule_checks_rounds():
    sched = build_schedule(nx.path_graph([1, 2, 3]), 'B')
    merged = MeasurementSchedule(
        sched.procedure, sched.graph,
        (sched.rounds[0] + sched.rounds[1],), sched.final, sched.ancillas,
        sched.variants)
    with pytest.raises(ContractError):
        execute_schedule(merged, OutcomePolicy.sample(0))


def test_schedule_to_json():
    sched = build_schedule(nx.Graph([(1, 2)]), 'A')
    d = json.loads(schedule_to_json(sched))
    assert d['procedure'] == 'A'
    assert d['depth'] == 2
    assert d['ancillas'][0] == {'label': 'a1', 'edge': [1, 2],
                                'init': 'omega', 'partner': 'b1'}
    assert len(d['final']) == 2
    assert all(m['init'] == 'omega' for m in d['rounds'][0])


def test_graph_json():
    g = nx.Graph([(3, 1), (1, 2)])
    g.add_node(7)
    g2 = graph_from_json(graph_to_json(g))
    assert sorted(g2.nodes) == [1, 2, 3, 7]
    assert ordered_edges(g2) == [(1, 2), (1, 3)]

    g2 = graph_from_json('{"edges": [["u", "v"]]}')
    assert set(g2.nodes) == {'u', 'v'}


@pytest.mark.parametrize('text', [
    '{"edges": [[1, 2], [2, 1]]}',
    '{"edges": [[1, 2, 3]]}',
    '{"vertices": [1, 2]}',
    '{"edges": [[1, 1]]}',
    '{"edges": []}',
    '{"edges": ',
])
def test_graph_from_json_errors(text):
    with pytest.raises(InvalidGraphError):
        graph_from_json(text)


def test_parse_edge_list():
    g = parse_edge_list('# triangle\n1 2\n\n2 3\n3 1  # closes it\n')
    assert ordered_edges(g) == [(1, 2), (1, 3), (2, 3)]

    g = parse_edge_list('u v\nv w')
    assert ordered_edges(g) == [('u', 'v'), ('v', 'w')]

    with pytest.raises(InvalidGraphError):
        parse_edge_list('1 2\n2 1')
    with pytest.raises(InvalidGraphError):
        parse_edge_list('1 2 3')
    with pytest.raises(InvalidGraphError):
        parse_edge_list('# nothing')


def test_read_graph():
    assert ordered_edges(read_graph('  {"edges": [[1, 2]]}')) == [(1, 2)]
    assert ordered_edges(read_graph('1 2')) == [(1, 2)]
