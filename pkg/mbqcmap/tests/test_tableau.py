import networkx as nx
import pytest

from mbqcmap.exceptions import ContractError, DimensionError
from mbqcmap.pauli import CliffordGate, PauliString
from mbqcmap.policy import OutcomePolicy
from mbqcmap.tableau import (StabilizerTableau, delete_qubit_z,
                             tableau_from_graph)


def P(s):
    return PauliString.from_str(s)


def test_from_stabilizers_finds_destabilizers():
    t = StabilizerTableau.from_stabilizers(['XXI', 'ZZI', 'IIZ'])
    assert t.is_valid()
    assert t.rank == 3
    for i, d in enumerate(t.destabilizers):
        for j, s in enumerate(t.stabilizers):
            assert d.commutes(s) == (i != j)


def test_invalid_generators():
    with pytest.raises(ContractError):
        StabilizerTableau.from_stabilizers(['XI', 'ZI'])
    with pytest.raises(ContractError):
        StabilizerTableau.from_stabilizers(['ZZ', 'ZZ'])
    with pytest.raises(ValueError):
        StabilizerTableau.from_symbols('0x')


def test_bell_pair_measurements():
    t = StabilizerTableau.from_symbols('+0')
    t = t.apply_gate(CliffordGate('CNOT', (0, 1)))
    assert t.contains(P('XX'))
    assert t.contains(P('ZZ'))
    assert t.probability(P('ZZ')) == 1.0
    assert t.probability(P('ZI')) == 0.5

    outcome, t2 = t.measure(P('ZI'), OutcomePolicy.force([1]))
    assert outcome == 1
    assert t2.contains(P('-ZI'))
    assert t2.contains(P('-IZ'))
    # Original not modified
    assert t.contains(P('XX'))


def test_determined_outcome_consumes_strict_bit():
    t = StabilizerTableau.from_symbols('1')
    policy = OutcomePolicy.force([1], strict=True)
    outcome, t2 = t.measure(P('Z'), policy)
    assert outcome == 1
    assert t2 == t
    assert policy.remaining == 0


def test_unencoded_observable():
    t = StabilizerTableau.from_stabilizers(['ZZ'])
    with pytest.raises(ContractError):
        t.probability(P('ZI'))
    with pytest.raises(DimensionError):
        t.probability(P('ZZZ'))


def test_apply_pauli_flips_anticommuting_signs():
    t = StabilizerTableau.from_symbols('0+')
    t2 = t.apply_pauli(P('XI'))
    assert t2.stabilizers == [P('-ZI'), P('+IX')]


def test_tracked_operators_follow_gates():
    t = StabilizerTableau.from_symbols('++', tracked={'X1': 'XI'})
    t = t.apply_gate(CliffordGate('CZ', (0, 1)))
    assert t.tracked['X1'] == P('XZ')


def test_discard_and_add_qubits():
    t = StabilizerTableau.from_symbols('+0')
    t = t.add_qubits('-')
    assert t.n == 3
    assert t.stabilizers[-1] == P('-IIX')
    t = t.discard(1)
    assert t.n == 2
    assert t.same_group(StabilizerTableau.from_symbols('+-'))

    entangled = StabilizerTableau.from_symbols('++').apply_gate(
        CliffordGate('CZ', (0, 1)))
    with pytest.raises(ContractError):
        entangled.discard(0)


def test_graph_tableau_matches_cz_preparation():
    g = nx.cycle_graph(4)
    t = StabilizerTableau.from_symbols('++++')
    for a, b in g.edges:
        t = t.apply_gate(CliffordGate('CZ', (a, b)))
    assert t.same_group(tableau_from_graph(g))
    assert tableau_from_graph(g).graph_neighbors() == {
        0: [1, 3], 1: [0, 2], 2: [1, 3], 3: [0, 2]}


def test_delete_qubit_z():
    g = nx.star_graph(3)
    t = tableau_from_graph(g)
    for bit in (0, 1):
        outcome, t2, c = delete_qubit_z(t, 0, OutcomePolicy.force([bit]))
        assert outcome == bit
        empty = nx.empty_graph([1, 2, 3])
        assert t2.apply_pauli(c).same_group(tableau_from_graph(empty))


def test_clean_tracked():
    t = StabilizerTableau.from_stabilizers(
        ['IZ'], tracked={'X1': 'XZ'})
    assert t.clean_tracked([1]).tracked['X1'] == P('XI')
    with pytest.raises(ContractError):
        t.clean_tracked([0])
