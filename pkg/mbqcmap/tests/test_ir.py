import numpy as np
import pytest

from mbqcmap.exceptions import ContractError
from mbqcmap.ir import (Box, Circuit, Correction, Gate, Measure, Prepare,
                        run_circuit)
from mbqcmap.policy import OutcomePolicy
from mbqcmap.statevector import prepare, random_state, ux


def teleport():
    return Circuit(3, [
        Prepare(2), Prepare(3, '0'), Gate('CNOT', (2, 3)),
        Gate('CNOT', (1, 2)), Gate('H', (1,)),
        Measure(1, 'Z', key='k1'), Measure(2, 'Z', key='k2'),
        Correction('X', 3, {'k2'}), Correction('Z', 3, {'k1'})],
        inputs=(1,), outputs=(3,), name='teleport')


def test_operation_validation():
    with pytest.raises(ContractError):
        Gate('CZ', (1,))
    with pytest.raises(ContractError):
        Gate('CZ', (1, 1))
    with pytest.raises(ContractError):
        Gate('UX', (1,))
    with pytest.raises(ContractError):
        Gate('H', (1,), 0.5)
    with pytest.raises(ContractError):
        Gate('H', (1,), deps={'j1'})
    with pytest.raises(ValueError):
        Gate('T', (1,))
    with pytest.raises(ContractError):
        Measure(1, 'X', angle=0.3, key='j1')
    with pytest.raises(ContractError):
        Measure(1, 'X')
    with pytest.raises(ValueError):
        Prepare(1, '1')
    with pytest.raises(ValueError):
        Correction('Y', 1)
    with pytest.raises(ContractError):
        Box('bell_prep', (1, 2), [Gate('H', (3,))])


def test_circuit_validation():
    with pytest.raises(ContractError):
        # wire 2 is never prepared
        Circuit(2, [Gate('CZ', (1, 2))], inputs=(1,), outputs=(1, 2))
    with pytest.raises(ContractError):
        Circuit(1, [Prepare(1)], inputs=(1,), outputs=(1,))
    with pytest.raises(ContractError):
        Circuit(2, [Prepare(2), Correction('X', 2, {'j1'}),
                    Measure(1, key='j1')], inputs=(1,), outputs=(2,))
    with pytest.raises(ContractError):
        Circuit(2, [Measure(1, key='j1'), Measure(2, key='j1')],
                inputs=(1, 2), outputs=())
    with pytest.raises(ContractError):
        Circuit(2, [], inputs=(1, 2), outputs=(1,))
    with pytest.raises(ContractError):
        Circuit(3, [], inputs=(1, 2), outputs=(1, 2))
    with pytest.raises(ContractError):
        Circuit(1, [], inputs=(1, 1), outputs=(1,))


def test_run_teleport_every_branch():
    c = teleport()
    s = random_state(1, np.random.default_rng(0))
    for bits in ([0, 0], [0, 1], [1, 0], [1, 1]):
        out, outcomes, prob = run_circuit(
            c, s, OutcomePolicy.force(bits, strict=True))
        assert outcomes == {'k1': bits[0], 'k2': bits[1]}
        assert prob == pytest.approx(0.25)
        assert out.fidelity(s) == pytest.approx(1)


def test_run_without_corrections():
    c = teleport()
    out, _, _ = run_circuit(c, prepare(1, '0'),
                            OutcomePolicy.force([0, 1]), corrections=False)
    assert out.expectation('Z') == pytest.approx(-1)
    with pytest.raises(ContractError):
        run_circuit(c, prepare(2, '00'), OutcomePolicy.sample(0))


def test_adaptive_rotation():
    c = Circuit(2, [Prepare(2), Measure(2, 'Z', key='j1'), Prepare(2, '0'),
                    Gate('UX', (1,), 0.4, deps={'j1'})],
                inputs=(1,), outputs=(1, 2))
    for bit, sign in ((0, 1), (1, -1)):
        out, _, _ = run_circuit(c, prepare(1, '0'),
                                OutcomePolicy.force([bit]))
        expected = prepare(1, '0').apply_unitary(ux(sign * 0.4), (0,))
        assert out.fidelity(expected.append('0')) == pytest.approx(1)


def test_boxes_and_queries():
    inner = (Prepare(2), Prepare(3, '0'), Gate('CNOT', (2, 3)))
    c = Circuit(3, [Box('bell_prep', (2, 3), inner),
                    Gate('CNOT', (1, 2)), Gate('H', (1,)),
                    Measure(1, 'Z', key='k1'), Measure(2, 'Z', key='k2')],
                inputs=(1,), outputs=(3,))
    assert len(c.boxes) == 1
    assert len(c.flat_ops()) == 7
    assert c.count(Gate, 'CNOT') == 2
    assert c.count(Measure) == 2
    assert c.keys == ('k1', 'k2')
    assert 'box bell_prep (2, 3) {' in c.pretty()

    # Boxes do not change what a circuit does
    flat = Circuit(3, c.flat_ops(), c.inputs, c.outputs)
    assert flat != c
    assert len(c.replace(0, 1, inner).boxes) == 0
    assert c.replace(0, 1, inner) == flat


def test_digest_is_stable():
    assert teleport().digest() == teleport().digest()
    assert len(teleport().digest()) == 16
    other = teleport().replace(0, 1, [Prepare(2, '0')])
    assert other.digest() != teleport().digest()
