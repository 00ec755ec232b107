import networkx as nx
import numpy as np
import pytest

from mbqcmap.exceptions import ContractError, DimensionError
from mbqcmap.frames import ByproductRule
from mbqcmap.patterns import (MeasurementPattern, PlanStep, build_pattern,
                              carve_graph, carve_pattern, compare_resources,
                              compose_patterns, eliminate_wires,
                              execute_pattern, line_pattern,
                              pattern_from_json, pattern_to_json,
                              resource_count, tensor_patterns,
                              verify_pattern)
from mbqcmap.policy import OutcomePolicy
from mbqcmap.statevector import gate_matrix, prepare, ux, uz
from mbqcmap.tableau import tableau_from_graph
from mbqcmap.utils import all_bitstrings

ANGLES = [0, np.pi / 8, np.pi / 4, np.pi / 2, 1.234567]


def assert_all_branches(p, n_branches):
    report = verify_pattern(p)
    assert len(report) == n_branches
    assert report['fidelity'].min() > 1 - 1e-9
    assert np.isclose(report['probability'].sum(), 1)


def test_wire():
    p = build_pattern('wire')
    assert_all_branches(p, 4)
    assert p.byproduct.formulas() == {3: 'X^{j2} Z^{j1}'}


@pytest.mark.parametrize('angle', ANGLES)
def test_rotations(angle):
    x = build_pattern('xrot', angle)
    z = build_pattern('zrot', angle)
    assert np.allclose(x.unitary, ux(angle))
    assert np.allclose(z.unitary, uz(angle))
    assert_all_branches(x, 4)
    assert_all_branches(z, 4)


def test_xrot_adapts_second_measurement():
    p = build_pattern('xrot', 0.3)
    assert p.plan[0].basis == 'X'
    assert p.plan[1].basis == 'EQ'
    assert p.plan[1].deps == {0}


def test_euler():
    p = build_pattern('euler', np.pi / 8, np.pi / 4, 1.234567)
    expected = uz(np.pi / 8) @ ux(np.pi / 4) @ uz(1.234567)
    assert np.allclose(p.unitary, expected)
    assert_all_branches(p, 16)


def test_two_qubit_patterns():
    assert_all_branches(build_pattern('cnot6'), 16)
    assert_all_branches(build_pattern('remote_cz'), 4)


def test_cnot_square():
    p = build_pattern('cnot_square')
    assert p.graph.number_of_nodes() == 10
    assert_all_branches(p, 256)


def test_build_pattern_errors():
    with pytest.raises(ValueError):
        build_pattern('toffoli')
    with pytest.raises(ValueError):
        build_pattern('xrot')
    with pytest.raises(ContractError):
        build_pattern('xrot', np.nan)


def test_pattern_validation():
    g = nx.path_graph([1, 2, 3])
    with pytest.raises(ContractError):
        # qubit 2 never measured
        MeasurementPattern(g, (1,), (3,), [PlanStep(1)])
    with pytest.raises(ContractError):
        MeasurementPattern(g, (1,), (3,), [PlanStep(1), PlanStep(3)])
    with pytest.raises(ContractError):
        MeasurementPattern(g, (1,), (3,),
                           [PlanStep(1, 'EQ', 0.1, {1}), PlanStep(2)])
    with pytest.raises(DimensionError):
        MeasurementPattern(g, (1,), (3,), [PlanStep(1), PlanStep(2)],
                           ByproductRule([(), ()], [(), ()]))
    with pytest.raises(ValueError):
        PlanStep(1, 'Y')


def test_execute_pattern():
    p = build_pattern('xrot', np.pi / 2)
    s = prepare(1, '0')
    out, outcomes, byproduct = execute_pattern(
        p, s, OutcomePolicy.force([1, 1]))
    assert outcomes == [1, 1]
    expected = s.apply_unitary(ux(np.pi / 2), (0,)).apply_pauli(byproduct)
    assert out.fidelity(expected) == pytest.approx(1)

    with pytest.raises(DimensionError):
        execute_pattern(p, prepare(2, '00'), OutcomePolicy.sample(0))


@pytest.mark.parametrize('seed', [0, 3, 11])
def test_sampled_run_replays_when_forced(seed):
    p = build_pattern('euler', 0.3, 0.9, -0.4)
    s = prepare(1, ['+i'])
    out, outcomes, byproduct = execute_pattern(
        p, s, OutcomePolicy.sample(seed))
    out2, outcomes2, byproduct2 = execute_pattern(
        p, s, OutcomePolicy.force(outcomes))
    assert outcomes2 == outcomes
    assert byproduct2 == byproduct
    assert np.array_equal(out2.amps, out.amps)


@pytest.mark.parametrize('angle', [np.pi / 8, 1.234567])
def test_zrot_measurement_order(angle):
    p = build_pattern('zrot', angle)
    swapped = p.reorder([1, 0])
    assert [s.qubit for s in swapped.plan] == [2, 1]
    for symbol in ('+', '+i'):
        s = prepare(1, [symbol])
        for bits in all_bitstrings(2):
            out, _, byproduct = execute_pattern(
                p, s, OutcomePolicy.force(bits))
            out2, _, byproduct2 = execute_pattern(
                swapped, s, OutcomePolicy.force(bits[::-1]))
            assert out2.fidelity(out) == pytest.approx(1)
            assert byproduct2 == byproduct
    assert_all_branches(swapped, 4)


def test_line_pattern_unitary():
    p = line_pattern([0.2, -0.4, 0.7])
    h = gate_matrix('H')
    expected = h @ uz(-0.7) @ h @ uz(0.4) @ h @ uz(-0.2)
    assert np.allclose(p.unitary, expected)
    assert_all_branches(p, 8)


def test_compose_line_patterns():
    p = compose_patterns(build_pattern('zrot', 0.3),
                         build_pattern('xrot', 0.2))
    assert np.allclose(p.unitary, ux(0.2) @ uz(0.3))
    assert_all_branches(p, 16)

    short = eliminate_wires(p)
    assert np.allclose(short.unitary, p.unitary)
    assert resource_count(short).measured_qubits == 2
    assert_all_branches(short, 4)


def test_compose_general_patterns():
    # Non-line composition adapts the angles of the second pattern
    p = compose_patterns(build_pattern('cnot6'), build_pattern('remote_cz'))
    assert np.allclose(p.unitary, gate_matrix('CZ') @ gate_matrix('CNOT'))
    assert_all_branches(p, 64)

    with pytest.raises(DimensionError):
        compose_patterns(build_pattern('wire'), build_pattern('cnot6'))


def test_tensor_patterns():
    p = tensor_patterns(build_pattern('wire'), build_pattern('zrot', 0.4))
    assert len(p.inputs) == 2
    assert np.allclose(p.unitary, np.kron(np.eye(2), uz(0.4)))
    assert_all_branches(p, 16)


def test_resources():
    assert resource_count(build_pattern('cnot6')).total_qubits == 6
    df = compare_resources()
    counts = dict(zip(df['unit'], df['total_qubits']))
    assert counts['remote_cz'] == 4
    assert counts['cnot6'] == 6
    assert counts['cnot_square'] == 10
    assert counts['cnot_lattice'] == 15
    assert counts['ux_uz_unit'] == 3


def test_carving():
    g = carve_graph((2, 2), {(0, 0): 1, (0, 1): 2, (1, 1): 3})
    assert sorted(g.edges) == [(1, 2), (2, 3)]
    with pytest.raises(DimensionError):
        carve_graph((2, 2), {(5, 5): 1})

    for seed in range(4):
        keep = {(0, 0): 1, (0, 1): 2, (1, 1): 3}
        graph, t, c = carve_pattern((2, 2), keep, OutcomePolicy.sample(seed))
        assert t.apply_pauli(c).same_group(tableau_from_graph(graph))


def test_json_round_trip():
    for p in (build_pattern('xrot', 0.3), build_pattern('cnot6')):
        q = pattern_from_json(pattern_to_json(p))
        assert q.inputs == p.inputs
        assert q.outputs == p.outputs
        assert q.plan == p.plan
        assert q.byproduct == p.byproduct
        assert np.allclose(q.unitary, p.unitary)
        assert {frozenset(e) for e in q.graph.edges} == \
            {frozenset(e) for e in p.graph.edges}
