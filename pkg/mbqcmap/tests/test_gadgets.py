import numpy as np
import pytest

from mbqcmap.exceptions import (AttemptCapError, ContractError,
                                DimensionError, ZeroProbabilityError)
from mbqcmap.gadgets import (PROCEDURES, AncillaCnot, MeasurementProcedure,
                             TwoQubitResource, cnot_gadget, format_table1,
                             procedure_tableau, procedure_byproduct_rule,
                             remote_cnot_circuit, remote_cz,
                             repeat_until_success,
                             table1_records, teleport_apply,
                             two_qubit_measurement_count)
from mbqcmap.pauli import PauliString
from mbqcmap.policy import OutcomePolicy
from mbqcmap.statevector import prepare, random_state, ux, uz
from mbqcmap.utils import all_bitstrings

U = uz(np.pi / 4) @ ux(1.234567)


def one():
    return random_state(1, np.random.default_rng(11))


def two():
    return random_state(2, np.random.default_rng(12))


@pytest.mark.parametrize('variant', ['a', 'b'])
def test_teleport_apply(variant):
    s = one()
    seen = set()
    for bits in all_bitstrings(2):
        policy = OutcomePolicy.force(bits, strict=True)
        q, index, out, sigma = teleport_apply(s, 0, U, variant, policy)
        seen.add(index.j)
        assert q == 0
        if variant == 'a':
            expected = s.apply_pauli(sigma).apply_unitary(U, (0,))
        else:
            expected = s.apply_unitary(U, (0,)).apply_pauli(sigma)
        assert out.fidelity(expected) == pytest.approx(1)
    assert seen == {0, 1, 2, 3}


def test_teleport_keeps_other_qubits():
    s = two()
    _, index, out, sigma = teleport_apply(
        s, 1, U, 'b', OutcomePolicy.from_bell_indices([3]))
    assert index.j == 3
    full = PauliString.on(2, {1: sigma.letter(0)})
    expected = s.apply_unitary(U, (1,)).apply_pauli(full)
    assert out.fidelity(expected) == pytest.approx(1)

    with pytest.raises(DimensionError):
        teleport_apply(s, 2, U, 'a', OutcomePolicy.sample(0))
    with pytest.raises(ValueError):
        teleport_apply(s, 0, U, 'c', OutcomePolicy.sample(0))


def test_repeat_until_success():
    s = one()
    attempts = []
    policy = OutcomePolicy.sample(5)
    for _ in range(2000):
        _, n, out = repeat_until_success(s, 0, U, policy)
        attempts.append(n)
        assert out.fidelity(s.apply_unitary(U, (0,))) == pytest.approx(1)
    assert 3.5 <= np.mean(attempts) <= 4.5
    assert min(attempts) == 1


def test_repeat_until_success_cap():
    with pytest.raises(AttemptCapError):
        repeat_until_success(one(), 0, U,
                             OutcomePolicy.from_bell_indices([1, 2]),
                             cap=2)


def test_cnot_gadget_all_branches():
    s = two()
    expected = s.apply_gate('CNOT', (0, 1))
    for bits in all_bitstrings(4):
        policy = OutcomePolicy.force(bits, strict=True)
        _, (i1, i2), out, c = cnot_gadget(s, 0, 1, policy)
        assert out.fidelity(expected.apply_pauli(c)) == pytest.approx(1)


def test_cnot_gadget_correction():
    # X on the control input becomes X on both outputs
    _, _, _, c = cnot_gadget(prepare(2, '00'), 0, 1,
                             OutcomePolicy.from_bell_indices([1, 0]))
    assert c == PauliString.from_str('XX')
    _, _, _, c = cnot_gadget(prepare(2, '00'), 0, 1,
                             OutcomePolicy.from_bell_indices([0, 3]))
    assert c == PauliString.from_str('ZZ')


def test_remote_cnot_circuit():
    s = two()
    expected = s.apply_gate('CNOT', (0, 1))
    for bits in all_bitstrings(2):
        out, c = remote_cnot_circuit(s, 0, 1,
                                     OutcomePolicy.force(bits, strict=True))
        assert out.fidelity(expected.apply_pauli(c)) == pytest.approx(1)


@pytest.mark.parametrize('proc', ['A', 'B', 'B_swapped', 'B_cnot'])
def test_remote_cz(proc):
    s = two()
    gate = PROCEDURES[proc].gate
    expected = s.apply_gate(gate, (0, 1))
    n_bits = len(PROCEDURES[proc].observables())
    runs = 0
    for bits in all_bitstrings(n_bits):
        policy = OutcomePolicy.force(bits, strict=True)
        try:
            out, c, transcript = remote_cz(s, 0, 1, proc, policy)
        except ZeroProbabilityError:
            continue
        runs += 1
        assert [r['outcome'] for r in transcript] == list(bits)
        assert out.fidelity(expected.apply_pauli(c)) == pytest.approx(1)
    assert runs > 0


def test_procedure_a_first_measurements_commute():
    first, second = PROCEDURES['A'].sequence
    assert PauliString.from_str(first).commutes(
        PauliString.from_str(second))

    proc = PROCEDURES['A']
    swapped = MeasurementProcedure('A_swapped', proc.ancilla_init,
                                   proc.sequence[::-1], proc.final)
    s = two()
    for bits in all_bitstrings(4):
        other = (bits[1], bits[0]) + bits[2:]
        try:
            out, c, _ = remote_cz(
                s, 0, 1, proc, OutcomePolicy.force(bits, strict=True))
        except ZeroProbabilityError:
            with pytest.raises(ZeroProbabilityError):
                remote_cz(s, 0, 1, swapped,
                          OutcomePolicy.force(other, strict=True))
            continue
        out2, c2, _ = remote_cz(
            s, 0, 1, swapped, OutcomePolicy.force(other, strict=True))
        assert c2 == c
        assert out2.fidelity(out) == pytest.approx(1)


def test_remote_cz_transcript():
    _, _, transcript = remote_cz(prepare(2, '++'), 0, 1, 'A',
                                 OutcomePolicy.sample(3))
    assert [r['observable'] for r in transcript] == [
        'ZXII', 'IIXZ', 'IZII', 'IIZI']
    assert [r['weight'] for r in transcript] == [2, 2, 1, 1]


def test_remote_cz_on_larger_register():
    s = random_state(3, np.random.default_rng(2))
    out, c, _ = remote_cz(s, 2, 0, 'B', OutcomePolicy.sample(9))
    assert c.n == 3
    expected = s.apply_gate('CZ', (2, 0)).apply_pauli(c)
    assert out.fidelity(expected) == pytest.approx(1)


def test_byproduct_rules():
    assert procedure_byproduct_rule('B').formulas() == {
        'control': 'Z^{j2}', 'target': 'Z^{j1+j3}'}
    for proc in ('A', 'B', 'B_swapped'):
        rule = procedure_byproduct_rule(proc)
        assert rule.x == (frozenset(), frozenset())


def test_procedure_tableau():
    steps = procedure_tableau('A', [0, 0, 0, 0])
    assert [obs for obs, _, _ in steps] == ['ZXII', 'IIXZ', 'IZII', 'IIZI']
    _, _, last = steps[-1]
    assert last.tracked['X1'] == PauliString.from_str('XIIZ')
    assert last.tracked['X4'] == PauliString.from_str('ZIIX')
    with pytest.raises(DimensionError):
        procedure_tableau('A', [0, 0])
    with pytest.raises(ValueError):
        procedure_tableau('C', [0])


def test_two_qubit_measurement_count():
    assert two_qubit_measurement_count('procedure_A') == 3
    assert two_qubit_measurement_count('procedure_B') == 2
    assert two_qubit_measurement_count('cnot_gadget') == 5
    with pytest.raises(ValueError):
        two_qubit_measurement_count('teleport')


def test_table1():
    df = table1_records()
    assert list(df.columns) == ['step', 'measured', 'operator', 'value']
    assert list(df['step'].unique()) == ['1a', '1b', '2a', '2b']
    text = format_table1(df)
    assert text.startswith('1a) Measure ZXII\nS:  I X Z I\nS:  Z X I I\n'
                           'X1: X Z X I')


def test_resources():
    with pytest.raises(ContractError):
        TwoQubitResource('rotated_bell')
    with pytest.raises(ValueError):
        TwoQubitResource('ghz')
    omega = TwoQubitResource('omega').state()
    assert omega.expectation('XZ') == pytest.approx(1)
    bell = TwoQubitResource('rotated_bell', rotation=U).state()
    assert bell.n == 2
    a = AncillaCnot().state()
    assert a.n == 4
    # CNOT(a2->a4) on two Bell pairs
    assert a.expectation('IZZZ') == pytest.approx(1)
