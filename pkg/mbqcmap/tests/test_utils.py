import networkx as nx
import numpy as np
import pytest

from mbqcmap.exceptions import InvalidGraphError
from mbqcmap.ir import Circuit, Gate
from mbqcmap.rewrite_rules import cz_cnot_identity, insert_hh
from mbqcmap.utils import (all_bitstrings, gf2_rank, gf2_solve,
                           ordered_vertices, parity, ply,
                           temporary_attr, validate_graph, verify_arg)


def test_temporary_attr():
    class klass:
        pass

    obj = klass()

    with temporary_attr(obj, 'one', 1):
        assert obj.one == 1
    assert not hasattr(obj, 'one')

    # The context does not suppress exceptions
    with pytest.raises(Exception):
        with temporary_attr(obj, 'two', 2):
            assert obj.two == 2
            raise Exception()
    assert not hasattr(obj, 'two')


def test_ply():
    c = Circuit(2, [Gate('CZ', (0, 1))], inputs=(0, 1), outputs=(0, 1))
    rules = cz_cnot_identity(index=0), insert_hh(qubit=0, index=0)
    assert ply(c, *rules) == c >> rules[0] >> rules[1]
    assert ply(c) is c


def test_verify_arg():
    verify_arg('A', 'proc', ('A', 'B'))
    with pytest.raises(ValueError):
        verify_arg('C', 'proc', ('A', 'B'))


def test_bits():
    assert len(list(all_bitstrings(4))) == 16
    assert parity((1, 1, 1), {0, 1, 2}) == 1


def test_gf2():
    a = np.array([[1, 0, 1], [0, 1, 1]])
    assert gf2_rank(a) == 2
    x = gf2_solve(a, [1, 0])
    assert list(a @ x % 2) == [1, 0]
    assert gf2_rank(np.zeros((2, 3))) == 0


def test_graphs():
    assert ordered_vertices(nx.Graph([(2, 'a')])) == [2, 'a']
    validate_graph(nx.path_graph(2))
    validate_graph(nx.empty_graph(2), allow_empty=True)
    with pytest.raises(InvalidGraphError):
        validate_graph(nx.empty_graph(2))
    with pytest.raises(InvalidGraphError):
        validate_graph(nx.Graph())
    with pytest.raises(InvalidGraphError):
        validate_graph(nx.Graph([(1, 1)]))
