import pytest

from mbqcmap.exceptions import ContractError, DimensionError
from mbqcmap.frames import ByproductRule, rule_from_branches
from mbqcmap.pauli import PauliString
from mbqcmap.utils import all_bitstrings


def test_evaluate_and_formulas():
    rule = ByproductRule([{0, 2}, ()], [{1}, {0}], labels=(5, 6))
    assert rule.evaluate([1, 0, 1]) == PauliString.from_str('IZ')
    assert rule.evaluate([1, 1, 0]) == PauliString.from_str('YZ')
    assert rule.formulas() == {5: 'X^{j1+j3} Z^{j2}', 6: 'Z^{j1}'}
    assert rule.steps == [0, 1, 2]
    assert not rule.is_identity()
    assert ByproductRule.identity(2).formulas() == {1: 'I', 2: 'I'}


def test_invalid_rules():
    with pytest.raises(DimensionError):
        ByproductRule([()], [(), ()])
    with pytest.raises(DimensionError):
        ByproductRule([()], [()], labels=(1, 2))


def test_shift_combine_tensor():
    a = ByproductRule([{0}], [()])
    b = ByproductRule([{0}], [{1}])
    assert a.shift(2).x == (frozenset({2}),)
    assert a.combine(b).x == (frozenset(),)
    assert a.combine(b).z == (frozenset({1}),)
    t = a.tensor(b)
    assert t.n_outputs == 2
    assert t.labels == (1, 1)


def test_propagate_through_cnot():
    # X on the control becomes X on both, Z on the target Z on both
    rule = ByproductRule([{0}, ()], [(), {1}])
    images = {('X', 0): PauliString.from_str('XX'),
              ('Z', 0): PauliString.from_str('ZI'),
              ('X', 1): PauliString.from_str('IX'),
              ('Z', 1): PauliString.from_str('ZZ')}
    out = rule.propagate(images)
    assert out.evaluate([1, 0]) == PauliString.from_str('XX')
    assert out.evaluate([0, 1]) == PauliString.from_str('ZZ')


def test_dict_round_trip():
    rule = ByproductRule([{1}], [{0, 1}], labels=(3,))
    d = rule.to_dict()
    assert d == {'3': {'x': [2], 'z': [1, 2]}}
    assert ByproductRule.from_dict(d, (3,)) == rule


def test_table():
    rule = ByproductRule([{1}], [{0}])
    df = rule.table(2)
    assert list(df['byproduct']) == ['I', 'X', 'Z', 'Y']


def test_rule_from_branches():
    branches = {bits: PauliString([bits[0] ^ bits[1]], [0])
                for bits in all_bitstrings(2)}
    rule = rule_from_branches(branches, 2)
    assert rule.x == (frozenset({0, 1}),)

    # Not a parity
    branches[(1, 1)] = PauliString.from_str('X')
    with pytest.raises(ContractError):
        rule_from_branches(branches, 2)

    with pytest.raises(ContractError):
        rule_from_branches({(0,): PauliString.from_str('X'),
                            (1,): PauliString.from_str('I')}, 1)
    with pytest.raises(ContractError):
        rule_from_branches({(0,): PauliString.from_str('I')}, 1)
