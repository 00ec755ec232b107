import numpy as np
import pytest

from mbqcmap.exceptions import ContractError, DimensionError
from mbqcmap.pauli import (CliffordGate, PauliString,
                           conjugate_by_clifford, pauli_commutes)
from mbqcmap.statevector import gate_matrix


def P(s):
    return PauliString.from_str(s)


def test_parse_and_print():
    assert str(P('XZ')) == '+XZ'
    assert str(P('-iY')) == '-iY'
    assert P('+iXX').phase == 1
    assert P('IXYZ').letters == 'IXYZ'
    assert P('IXYZ').support == (1, 2, 3)

    with pytest.raises(ValueError):
        P('XQ')


def test_multiplication_phases():
    assert P('X') * P('Y') == P('+iZ')
    assert P('Y') * P('X') == P('-iZ')
    assert P('Z') * P('Z') == P('I')
    # Phases follow the matrices
    for a in ('XY', 'ZX', 'YZ', 'XX', '-iYI'):
        for b in ('ZY', 'YY', 'IX', '+iZZ'):
            prod = P(a) * P(b)
            expected = P(a).to_matrix() @ P(b).to_matrix()
            assert np.allclose(prod.to_matrix(), expected)

    with pytest.raises(DimensionError):
        P('X') * P('XX')


def test_commutation():
    assert pauli_commutes(P('XX'), P('ZZ'))
    assert not pauli_commutes(P('XI'), P('ZI'))
    assert P('ZXII').commutes(P('IIXZ'))


def test_on_and_restrict():
    p = PauliString.on(3, {1: 'Y'}, phase=2)
    assert p == P('-IYI')
    assert p.restrict([1]) == P('-Y')
    assert p.unsigned() == P('IYI')
    assert p.letter(1) == 'Y'

    with pytest.raises(DimensionError):
        PauliString.on(2, {2: 'X'})


def test_clifford_gate_validation():
    with pytest.raises(ContractError):
        CliffordGate('CNOT', (0,))
    with pytest.raises(ContractError):
        CliffordGate('CZ', (1, 1))
    with pytest.raises(ValueError):
        CliffordGate('T', (0,))


@pytest.mark.parametrize('kind,targets', [
    ('H', (0,)), ('S', (1,)), ('X', (0,)), ('Y', (1,)), ('Z', (0,)),
    ('CNOT', (0, 1)), ('CNOT', (1, 0)), ('CZ', (0, 1)),
])
def test_conjugation_matches_matrices(kind, targets):
    gate = CliffordGate(kind, targets)
    mat = gate_matrix(kind)
    if len(targets) == 1:
        u = np.kron(mat, np.eye(2)) if targets[0] == 0 else \
            np.kron(np.eye(2), mat)
    elif targets == (0, 1):
        u = mat
    else:
        swap = gate_matrix('CNOT') @ np.array(
            [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]) @ \
            gate_matrix('CNOT')
        u = swap @ mat @ swap
    for s in ('XI', 'ZI', 'IX', 'IZ', 'YY', '-XZ'):
        p = P(s)
        out = conjugate_by_clifford(p, gate)
        assert np.allclose(out.to_matrix(),
                           u @ p.to_matrix() @ u.conj().T)
