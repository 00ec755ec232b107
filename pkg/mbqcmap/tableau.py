"""
Stabilizer tableau with destabilizers and tracked logical operators

The tableau may have fewer generators than qubits. Such a tableau
describes a code space, and the ``tracked`` operators are the
logical operators whose evolution is followed through Clifford gates
and Pauli measurements.
"""
import logging
from copy import deepcopy

import numpy as np

from .exceptions import ContractError, DimensionError
from .pauli import (PauliString, apply_clifford,
                    product_phase, symplectic_product)
from .utils import gf2_rank, gf2_solve, ordered_vertices, validate_graph

__all__ = ['StabilizerTableau', 'measure_pauli', 'tableau_from_graph',
           'delete_qubit_z']

logger = logging.getLogger(__name__)

_SYMBOL_GENERATORS = {'0': 'Z', '1': 'Z', '+': 'X', '-': 'X'}
_SYMBOL_SIGNS = {'0': 0, '1': 2, '+': 0, '-': 2}


class _Rows:
    """
    Block of Pauli strings stored as bit matrices
    """

    def __init__(self, x, z, phase):
        self.x = np.array(x, dtype=np.uint8)
        self.z = np.array(z, dtype=np.uint8)
        self.phase = np.array(phase, dtype=np.int64) % 4

    @classmethod
    def from_paulis(cls, paulis, n):
        if not paulis:
            return cls(np.zeros((0, n)), np.zeros((0, n)), [])
        for p in paulis:
            if p.n != n:
                raise DimensionError(
                    "Expected {} qubits, got {!r}".format(n, p))
        x = np.vstack([p.x for p in paulis])
        z = np.vstack([p.z for p in paulis])
        return cls(x, z, [p.phase for p in paulis])

    def __len__(self):
        return len(self.phase)

    def __getitem__(self, i):
        return PauliString(self.x[i], self.z[i], self.phase[i])

    def anticommuting(self, p):
        """
        Boolean mask of rows that anticommute with p
        """
        return symplectic_product(self.x, self.z, p.x, p.z).astype(bool)

    def multiply(self, mask, p):
        """
        Replace the selected rows R by R·p
        """
        if not mask.any():
            return
        self.phase[mask] += p.phase + product_phase(
            self.x[mask], self.z[mask], p.x, p.z)
        self.phase[mask] %= 4
        self.x[mask] ^= p.x
        self.z[mask] ^= p.z

    def set(self, i, p):
        self.x[i] = p.x
        self.z[i] = p.z
        self.phase[i] = p.phase

    def delete(self, rows=None, column=None):
        x, z, phase = self.x, self.z, self.phase
        if rows is not None:
            x = np.delete(x, rows, axis=0)
            z = np.delete(z, rows, axis=0)
            phase = np.delete(phase, rows)
        if column is not None:
            x = np.delete(x, column, axis=1)
            z = np.delete(z, column, axis=1)
        return _Rows(x, z, phase)

    def equals(self, other):
        return (np.array_equal(self.x, other.x) and
                np.array_equal(self.z, other.z) and
                np.array_equal(self.phase, other.phase))


class StabilizerTableau:
    """
    Stabilizer group with destabilizers and tracked operators

    Parameters
    ----------
    n : int
        Number of qubits.
    stabilizers : list of PauliString
        Mutually commuting, independent Hermitian generators.
    destabilizers : list of PauliString
        ``destabilizers[i]`` anticommutes with ``stabilizers[i]`` and
        commutes with all the other stabilizers.
    tracked : dict, optional
        ``{name: PauliString}`` of logical operators to follow.

    Notes
    -----
    Operations never modify a tableau, they return a new one.
    Use :meth:`from_stabilizers` to have the destabilizers computed.

    Examples
    --------
    >>> t = StabilizerTableau.from_symbols('0+')
    >>> print(t.to_text())
    S:
    +ZI
    +IX
    tracked:
    """

    def __init__(self, n, stabilizers, destabilizers, tracked=None):
        if len(stabilizers) != len(destabilizers):
            raise DimensionError(
                "Got {} stabilizers and {} destabilizers".format(
                    len(stabilizers), len(destabilizers)))
        if len(stabilizers) > n:
            raise DimensionError(
                "{} generators do not fit on {} qubits".format(
                    len(stabilizers), n))
        tracked = tracked or {}
        self.n = n
        self._s = _Rows.from_paulis(list(stabilizers), n)
        self._d = _Rows.from_paulis(list(destabilizers), n)
        self._names = tuple(tracked)
        self._t = _Rows.from_paulis(list(tracked.values()), n)
        self._check()

    @classmethod
    def _from_rows(cls, n, s, d, t, names):
        self = cls.__new__(cls)
        self.n = n
        self._s, self._d, self._t = s, d, t
        self._names = tuple(names)
        return self

    @classmethod
    def from_stabilizers(cls, stabilizers, tracked=None):
        """
        Create tableau and find matching destabilizers

        Parameters
        ----------
        stabilizers : list of PauliString or str
            Generators.
        tracked : dict, optional
            ``{name: PauliString or str}``

        Examples
        --------
        >>> t = StabilizerTableau.from_stabilizers(
        ...     ['IXZI', 'IZXI'],
        ...     tracked={'X1': 'XIII', 'Z1': 'ZIII'})
        >>> t.n, t.rank
        (4, 2)
        >>> t.tracked['X1']
        PauliString('+XIII')
        """
        stabilizers = [_as_pauli(p) for p in stabilizers]
        tracked = {name: _as_pauli(p)
                   for name, p in (tracked or {}).items()}
        if not stabilizers and not tracked:
            raise ContractError("Need at least one operator")
        n = (stabilizers or list(tracked.values()))[0].n

        # Find D with <D_i, S_j> = delta_ij in the symplectic form
        s = _Rows.from_paulis(stabilizers, n)
        if len(s) and gf2_rank(np.hstack([s.x, s.z])) < len(s):
            raise ContractError("Stabilizers are not independent")
        a = np.hstack([s.z, s.x])
        destabilizers = []
        for i in range(len(s)):
            target = np.zeros(len(s), dtype=np.uint8)
            target[i] = 1
            v = gf2_solve(a, target)
            destabilizers.append(PauliString(v[:n], v[n:]))
        return cls(n, stabilizers, destabilizers, tracked)

    @classmethod
    def from_symbols(cls, symbols, tracked=None):
        """
        Product state tableau

        Parameters
        ----------
        symbols : str
            One of ``'0', '1', '+', '-'`` per qubit.
        tracked : dict, optional
            ``{name: PauliString or str}``

        Examples
        --------
        >>> StabilizerTableau.from_symbols('1-').stabilizers
        [PauliString('-ZI'), PauliString('-IX')]
        """
        n = len(symbols)
        stabilizers, destabilizers = [], []
        for q, sym in enumerate(symbols):
            if sym not in _SYMBOL_GENERATORS:
                raise ValueError(
                    "Unknown state symbol {!r}".format(sym))
            letter = _SYMBOL_GENERATORS[sym]
            other = 'X' if letter == 'Z' else 'Z'
            stabilizers.append(
                PauliString.on(n, {q: letter}, _SYMBOL_SIGNS[sym]))
            destabilizers.append(PauliString.on(n, {q: other}))
        tracked = {name: _as_pauli(p)
                   for name, p in (tracked or {}).items()}
        return cls(n, stabilizers, destabilizers, tracked)

    def _check(self):
        if len(self._s) == 0:
            return
        if (self._s.phase % 2).any():
            raise ContractError("Stabilizers must have phase +1 or -1")
        if gf2_rank(np.hstack([self._s.x, self._s.z])) < len(self._s):
            raise ContractError("Stabilizers are not independent")
        if self._gram(self._s, self._s).any():
            raise ContractError("Stabilizers do not commute")
        if not np.array_equal(self._gram(self._d, self._s),
                              np.eye(len(self._s), dtype=np.uint8)):
            raise ContractError(
                "Destabilizer i must anticommute with stabilizer i "
                "only")

    @staticmethod
    def _gram(a, b):
        return (a.x.astype(np.int64) @ b.z.T +
                a.z.astype(np.int64) @ b.x.T) % 2

    def is_valid(self):
        """
        Whether the tableau invariants hold
        """
        try:
            self._check()
        except ContractError:
            return False
        return True

    @property
    def rank(self):
        return len(self._s)

    @property
    def stabilizers(self):
        return [self._s[i] for i in range(len(self._s))]

    @property
    def destabilizers(self):
        return [self._d[i] for i in range(len(self._d))]

    @property
    def tracked(self):
        return {name: self._t[i] for i, name in enumerate(self._names)}

    def copy(self):
        return deepcopy(self)

    def __eq__(self, other):
        if not isinstance(other, StabilizerTableau):
            return NotImplemented
        return (self.n == other.n and
                self._names == other._names and
                self._s.equals(other._s) and
                self._d.equals(other._d) and
                self._t.equals(other._t))

    def __repr__(self):
        return "<StabilizerTableau n={} rank={} tracked={}>".format(
            self.n, self.rank, list(self._names))

    def to_text(self, destabilizers=False):
        """
        Text listing of the generators and tracked operators

        One operator per line with a leading sign. The section
        headers are ``S:`` and ``tracked:`` (and ``D:`` when the
        destabilizers are requested).
        """
        lines = ['S:']
        lines.extend(str(p) for p in self.stabilizers)
        if destabilizers:
            lines.append('D:')
            lines.extend(str(p) for p in self.destabilizers)
        lines.append('tracked:')
        lines.extend('{}: {}'.format(name, p)
                     for name, p in self.tracked.items())
        return '\n'.join(lines)

    def _check_operator(self, obs):
        if obs.n != self.n:
            raise DimensionError(
                "Operator on {} qubits, tableau has {}".format(
                    obs.n, self.n))

    def _group_element(self, obs):
        """
        Element of the group with the letters of obs, else None
        """
        mask = self._d.anticommuting(obs)
        product = PauliString.identity(self.n)
        for i in np.flatnonzero(mask):
            product = product * self._s[i]
        if (np.array_equal(product.x, obs.x) and
                np.array_equal(product.z, obs.z)):
            return product
        return None

    def probability(self, obs):
        """
        Probability of outcome ``0`` when measuring obs

        Parameters
        ----------
        obs : PauliString
            Hermitian observable with phase ``+1``.

        Returns
        -------
        out : float
            One of ``0.0, 0.5, 1.0``.

        Examples
        --------
        >>> t = StabilizerTableau.from_symbols('0+')
        >>> [t.probability(PauliString.from_str(s))
        ...  for s in ('ZI', 'ZX', 'XI')]
        [1.0, 1.0, 0.5]
        """
        obs = _as_pauli(obs)
        self._check_operator(obs)
        if obs.phase != 0:
            raise ContractError("Observable must have phase +1")
        if self._s.anticommuting(obs).any():
            return 0.5
        element = self._group_element(obs)
        if element is None:
            raise ContractError(
                "{} commutes with the stabilizers but is not in the "
                "group, its outcome depends on the encoded "
                "state".format(obs))
        return 1.0 if element.phase == 0 else 0.0

    def outcome_of(self, obs):
        """
        Determined outcome of obs, raises if it is random
        """
        p0 = self.probability(obs)
        if p0 == 0.5:
            raise ContractError("Outcome of {} is random".format(obs))
        return 0 if p0 == 1.0 else 1

    def contains(self, obs):
        """
        Whether obs, with its sign, is in the stabilizer group

        Examples
        --------
        >>> t = StabilizerTableau.from_symbols('00')
        >>> t.contains(PauliString.from_str('ZZ'))
        True
        >>> t.contains(PauliString.from_str('-ZZ'))
        False
        """
        obs = _as_pauli(obs)
        self._check_operator(obs)
        if self._s.anticommuting(obs).any():
            return False
        element = self._group_element(obs)
        return element is not None and element.phase == obs.phase

    def same_group(self, other):
        """
        Whether both tableaux generate the same signed group
        """
        if self.n != other.n or self.rank != other.rank:
            return False
        return all(self.contains(p) for p in other.stabilizers)

    def measure(self, obs, policy):
        """
        Measure a Pauli observable

        Parameters
        ----------
        obs : PauliString or str
            Observable with phase ``+1``.
        policy : OutcomePolicy
            Decides random outcomes.

        Returns
        -------
        outcome : int
            ``0`` for eigenvalue ``+1`` and ``1`` for ``-1``.
        tableau : StabilizerTableau
            Post-measurement tableau.
        """
        obs = _as_pauli(obs)
        self._check_operator(obs)
        if obs.phase != 0:
            raise ContractError("Observable must have phase +1")

        anti = self._s.anticommuting(obs)
        if not anti.any():
            p0 = self.probability(obs)
            outcome = policy.resolve(p0)
            logger.debug("measure %s: determined outcome %d",
                         obs, outcome)
            return outcome, self

        outcome = policy.resolve(0.5)
        t = self.copy()
        p = int(np.flatnonzero(anti)[0])
        retiring = t._s[p]
        anti[p] = False
        t._s.multiply(anti, retiring)
        d_anti = t._d.anticommuting(obs)
        d_anti[p] = False
        t._d.multiply(d_anti, retiring)
        t._t.multiply(t._t.anticommuting(obs), retiring)
        t._d.set(p, retiring)
        t._s.set(p, obs.with_phase(2 * outcome))
        logger.debug("measure %s: random outcome %d replaces row %d",
                     obs, outcome, p)
        return outcome, t

    def apply_gate(self, gate):
        """
        Conjugate every row by a Clifford gate

        Examples
        --------
        >>> from mbqcmap.pauli import CliffordGate
        >>> t = StabilizerTableau.from_symbols('++')
        >>> t.apply_gate(CliffordGate('CZ', (0, 1))).stabilizers
        [PauliString('+XZ'), PauliString('+ZX')]
        """
        t = self.copy()
        for rows in (t._s, t._d, t._t):
            apply_clifford(rows.x, rows.z, rows.phase, gate)
        return t

    def apply_pauli(self, pauli):
        """
        Conjugate every row by a Pauli operator
        """
        pauli = _as_pauli(pauli)
        self._check_operator(pauli)
        t = self.copy()
        for rows in (t._s, t._d, t._t):
            flip = rows.anticommuting(pauli)
            rows.phase[flip] = (rows.phase[flip] + 2) % 4
        return t

    def tensor(self, other):
        """
        Tableau of the joint system, self on the leading qubits

        Tracked operators of both are kept and widened. Names must
        not clash.
        """
        clash = set(self._names) & set(other._names)
        if clash:
            raise ContractError(
                "Tracked names clash: {}".format(sorted(clash)))

        def join(a, b):
            x = np.zeros((len(a) + len(b), self.n + other.n),
                         dtype=np.uint8)
            z = x.copy()
            x[:len(a), :self.n] = a.x
            z[:len(a), :self.n] = a.z
            x[len(a):, self.n:] = b.x
            z[len(a):, self.n:] = b.z
            return _Rows(x, z, np.concatenate([a.phase, b.phase]))

        return StabilizerTableau._from_rows(
            self.n + other.n,
            join(self._s, other._s),
            join(self._d, other._d),
            join(self._t, other._t),
            self._names + other._names)

    def add_qubits(self, symbols):
        """
        Append fresh qubits prepared in product states
        """
        return self.tensor(StabilizerTableau.from_symbols(symbols))

    def _isolate(self, obs):
        """
        Rewrite generators so that one row equals ±obs

        obs must be in the group up to sign. Returns the row index.
        """
        mask = self._d.anticommuting(obs)
        rows = np.flatnonzero(mask)
        if not len(rows):
            raise ContractError("{} is the identity".format(obs))
        p = int(rows[0])
        others = mask.copy()
        others[p] = False
        for i in np.flatnonzero(others):
            self._s.multiply(np.arange(len(self._s)) == p, self._s[i])
        # keep destabilizer i anticommuting with stabilizer i only
        self._d.multiply(others, self._d[p])
        return p

    def _single_qubit_row(self, q):
        """
        Row whose stabilizer acts only on qubit q, isolating if needed
        """
        support = self._s.x | self._s.z
        for i in range(len(self._s)):
            if support[i, q] and support[i].sum() == 1:
                return i
        for letter in 'ZXY':
            obs = PauliString.on(self.n, {q: letter})
            if (not self._s.anticommuting(obs).any() and
                    self._group_element(obs) is not None):
                return self._isolate(obs)
        return None

    def _clear_column(self, rows, q, p, skip=None):
        stab = self._s[p]
        on_q = (rows.x[:, q] | rows.z[:, q]).astype(bool)
        if skip is not None:
            on_q[skip] = False
        same = (on_q & (rows.x[:, q] == stab.x[q]) &
                (rows.z[:, q] == stab.z[q]))
        if (on_q & ~same).any():
            raise ContractError(
                "An operator anticommutes with the stabilizer {} "
                "of qubit {}".format(stab, q + 1))
        rows.multiply(same, stab)

    def clean_tracked(self, qubits):
        """
        Remove qubits in stabilizer eigenstates from tracked operators

        Each tracked operator that acts on such a qubit is multiplied
        by the single-qubit stabilizer there.

        Parameters
        ----------
        qubits : list of int
            0-based qubits, each must carry a single-qubit stabilizer.
        """
        t = self.copy()
        for q in qubits:
            p = t._single_qubit_row(q)
            if p is None:
                raise ContractError(
                    "Qubit {} is not in a stabilizer eigenstate".format(
                        q + 1))
            t._clear_column(t._t, q, p)
        return t

    def discard(self, q):
        """
        Remove a qubit that is in a single-qubit stabilizer eigenstate

        Returns
        -------
        out : StabilizerTableau
            Tableau on ``n - 1`` qubits.
        """
        if not 0 <= q < self.n:
            raise DimensionError(
                "Qubit {} out of range for {} qubits".format(q, self.n))
        t = self.copy()
        p = t._single_qubit_row(q)
        if p is None:
            raise ContractError(
                "Qubit {} is entangled and cannot be discarded".format(
                    q + 1))
        t._clear_column(t._s, q, p, skip=p)
        t._clear_column(t._d, q, p, skip=p)
        t._clear_column(t._t, q, p)
        return StabilizerTableau._from_rows(
            self.n - 1,
            t._s.delete(rows=p, column=q),
            t._d.delete(rows=p, column=q),
            t._t.delete(column=q),
            t._names)

    def graph_neighbors(self):
        """
        Adjacency read off a graph-form tableau

        Returns
        -------
        out : dict
            ``{qubit: sorted list of neighbor qubits}``, 0-based.

        Raises
        ------
        ContractError
            If some stabilizer does not have exactly one X.
        """
        if self.rank != self.n:
            raise ContractError("Graph-form tableau needs full rank")
        xs = self._s.x
        if not (xs.sum(axis=1) == 1).all() or not (
                xs.sum(axis=0) == 1).all():
            raise ContractError(
                "Tableau is not in graph form, each stabilizer must "
                "have exactly one X")
        owner = {int(np.flatnonzero(xs[i])[0]): i for i in range(self.n)}
        neighbors = {}
        for q, i in owner.items():
            neighbors[q] = [int(j) for j in np.flatnonzero(self._s.z[i])
                            if j != q]
        return neighbors


def _as_pauli(p):
    if isinstance(p, PauliString):
        return p
    return PauliString.from_str(p)


def measure_pauli(t, obs, policy):
    """
    Measure a Pauli observable on a tableau

    Parameters
    ----------
    t : StabilizerTableau
        State.
    obs : PauliString or str
        Observable with phase ``+1``.
    policy : OutcomePolicy
        Decides random outcomes.

    Returns
    -------
    outcome : int
        Measured bit.
    tableau : StabilizerTableau
        New tableau. For a determined outcome it is ``t`` itself.

    Examples
    --------
    >>> from mbqcmap.policy import OutcomePolicy
    >>> t = StabilizerTableau.from_stabilizers(
    ...     ['IXZI', 'IZXI'], tracked={'X1': 'XIII'})
    >>> outcome, t = measure_pauli(t, 'ZXII', OutcomePolicy.force([0]))
    >>> print(t.to_text())
    S:
    +IXZI
    +ZXII
    tracked:
    X1: +XZXI
    """
    return t.measure(obs, policy)


def tableau_from_graph(g):
    """
    Stabilizer tableau of a graph state

    Vertices are ordered with :func:`~mbqcmap.utils.ordered_vertices`.
    Stabilizer ``i`` is ``X`` on vertex ``i`` and ``Z`` on its
    neighbors. Destabilizer ``i`` is ``Z`` on vertex ``i``.

    Parameters
    ----------
    g : networkx.Graph
        Simple graph with at least one vertex.

    Examples
    --------
    >>> import networkx as nx
    >>> tableau_from_graph(nx.path_graph([1, 2, 3])).stabilizers
    [PauliString('+XZI'), PauliString('+ZXZ'), PauliString('+IZX')]
    """
    validate_graph(g, allow_empty=True)
    vertices = ordered_vertices(g)
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    stabilizers, destabilizers = [], []
    for v in vertices:
        letters = {index[u]: 'Z' for u in g.neighbors(v)}
        letters[index[v]] = 'X'
        stabilizers.append(PauliString.on(n, letters))
        destabilizers.append(PauliString.on(n, {index[v]: 'Z'}))
    return StabilizerTableau(n, stabilizers, destabilizers)


def delete_qubit_z(t, q, policy):
    """
    Measure ``Z`` on a graph-state qubit and remove it

    Parameters
    ----------
    t : StabilizerTableau
        Graph-form tableau.
    q : int
        0-based qubit.
    policy : OutcomePolicy
        Decides the outcome.

    Returns
    -------
    outcome : int
        Measured bit.
    tableau : StabilizerTableau
        Tableau on ``n - 1`` qubits.
    correction : PauliString
        ``Z`` on the former neighbors if the outcome is ``1``,
        identity otherwise. Applying it gives the graph state of the
        graph without vertex ``q``.

    Examples
    --------
    >>> import networkx as nx
    >>> from mbqcmap.policy import OutcomePolicy
    >>> t = tableau_from_graph(nx.path_graph(3))
    >>> outcome, t2, c = delete_qubit_z(t, 1, OutcomePolicy.force([1]))
    >>> t2.stabilizers, c
    ([PauliString('-XI'), PauliString('-IX')], PauliString('+ZZ'))
    """
    if not 0 <= q < t.n:
        raise DimensionError(
            "Qubit {} out of range for {} qubits".format(q, t.n))
    neighbors = t.graph_neighbors()[q]
    outcome, measured = t.measure(PauliString.on(t.n, {q: 'Z'}), policy)
    result = measured.discard(q)
    remaining = [j if j < q else j - 1 for j in neighbors]
    letters = {j: 'Z' for j in remaining} if outcome else {}
    correction = PauliString.on(t.n - 1, letters)
    logger.debug("deleted qubit %d, outcome %d, neighbors %s",
                 q + 1, outcome, [j + 1 for j in neighbors])
    return outcome, result, correction
