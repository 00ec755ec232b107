import itertools
from contextlib import contextmanager

import networkx as nx
import numpy as np

from .exceptions import InvalidGraphError


@contextmanager
def temporary_attr(obj, name, value):
    """
    Context manager that removes an attribute on closing

    The object will hold the attribute for the duration of
    the context.

    Parameters
    ----------
    obj : object
        Object onto which to add a temporary attribute.
    name : str
        Name of attribute to add to ``obj``.
    value : object
        Value of ``attr``.
    """
    setattr(obj, name, value)
    try:
        yield obj
    finally:
        delattr(obj, name)


def verify_arg(value, name, options):
    """
    Verify Argument

    Parameter
    ---------
    value : int | str
        Value of argument
    name : str
        Name of argument
    options : list-like | set
        Allowed values of argument

    Raises
    ------
    ValueError
        If value is not in the allowed options.

    Examples
    --------
    >>> verify_arg('b', 'variant', ('a', 'b'))
    >>> verify_arg('c', 'variant', ('a', 'b'))
    Traceback (most recent call last):
        ...
    ValueError: Got variant='c'. Should be one of ('a', 'b')
    """
    if value not in options:
        raise ValueError(
            "Got {}={!r}. Should be one of {!r}".format(
                name, value, options
            )
        )


def ply(data, *rules):
    """
    Pipe data through the rules

    This function allows you to use mbqcmap without
    abusing the ``>>`` operator.

    Parameters
    ----------
    data : Circuit
        Data
    rules : tuple
        Rules to which the data should be piped

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> from mbqcmap.rewrite_rules import insert_hh, cancel_hh
    >>> c = Circuit(2, [Gate('CZ', (0, 1))], inputs=(0, 1),
    ...             outputs=(0, 1))
    >>> ply(c, insert_hh(qubit=1, index=1), cancel_hh(index=1)) == c
    True
    """
    for rule in rules:
        data = data >> rule
    return data


def all_bitstrings(m):
    """
    All tuples of ``m`` bits in counting order

    Examples
    --------
    >>> list(all_bitstrings(2))
    [(0, 0), (0, 1), (1, 0), (1, 1)]
    >>> list(all_bitstrings(0))
    [()]
    """
    return itertools.product((0, 1), repeat=m)


def parity(bits, positions):
    """
    Parity of the bits at the given positions

    Examples
    --------
    >>> parity([1, 0, 1, 1], [0, 2])
    0
    >>> parity([1, 0, 1, 1], [0, 3, 1])
    0
    >>> parity([1, 0, 1, 1], [])
    0
    >>> parity([1, 0, 1, 1], [3])
    1
    """
    return sum(bits[i] for i in positions) % 2


def gf2_rank(matrix):
    """
    Rank of a 0/1 matrix over the two element field

    Examples
    --------
    >>> gf2_rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    2
    """
    m = np.array(matrix, dtype=np.uint8) % 2
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        others = m[:, col].astype(bool)
        others[rank] = False
        m[others] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_solve(a, b):
    """
    Solve ``a @ x = b`` over the two element field

    Parameters
    ----------
    a : array_like
        Matrix of shape ``(m, n)`` with 0/1 entries.
    b : array_like
        Vector of length ``m``.

    Returns
    -------
    x : numpy.ndarray | None
        One solution (free variables set to zero) or ``None``
        if the system is inconsistent.

    Examples
    --------
    >>> gf2_solve([[1, 1], [0, 1]], [1, 1])
    array([0, 1], dtype=uint8)
    >>> gf2_solve([[1, 1], [1, 1]], [1, 0]) is None
    True
    """
    a = np.array(a, dtype=np.uint8) % 2
    b = np.array(b, dtype=np.uint8) % 2
    m, n = a.shape
    aug = np.concatenate([a, b[:, None]], axis=1)
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if aug[r, col]), None)
        if pivot is None:
            continue
        aug[[row, pivot]] = aug[[pivot, row]]
        others = aug[:, col].astype(bool)
        others[row] = False
        aug[others] ^= aug[row]
        pivots.append(col)
        row += 1
        if row == m:
            break

    if aug[row:, n].any():
        return None

    x = np.zeros(n, dtype=np.uint8)
    for r, col in enumerate(pivots):
        x[col] = aug[r, n]
    return x


def ordered_vertices(g):
    """
    Vertices of a graph in canonical order

    Sorted when the labels are comparable, insertion order otherwise.

    Examples
    --------
    >>> import networkx as nx
    >>> ordered_vertices(nx.Graph([(3, 1), (1, 2)]))
    [1, 2, 3]
    """
    try:
        return sorted(g.nodes)
    except TypeError:
        return list(g.nodes)


def validate_graph(g, allow_empty=False):
    """
    Check that a graph is simple

    Parameters
    ----------
    g : networkx.Graph
        Graph to check.
    allow_empty : bool
        If ``False``, a graph without edges is rejected.

    Raises
    ------
    InvalidGraphError
        If the graph has no vertices, a self-loop, a duplicate
        edge or (unless allowed) no edges.

    Examples
    --------
    >>> import networkx as nx
    >>> validate_graph(nx.Graph([(1, 1)]))
    Traceback (most recent call last):
        ...
    InvalidGraphError: Graph has a self-loop at vertex 1
    """
    if g.number_of_nodes() == 0:
        raise InvalidGraphError("Graph has no vertices")

    for u, _ in nx.selfloop_edges(g):
        raise InvalidGraphError(
            "Graph has a self-loop at vertex {}".format(u))

    if g.is_multigraph():
        for u, v in g.edges():
            if g.number_of_edges(u, v) > 1:
                raise InvalidGraphError(
                    "Graph has a duplicate edge ({}, {})".format(u, v))

    if not allow_empty and g.number_of_edges() == 0:
        raise InvalidGraphError("Graph has no edges")
