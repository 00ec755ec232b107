"""
Dense state vector simulation for a handful of qubits

Qubit ``0`` is the most significant bit of the amplitude index.
Measurement outcome ``0`` always stands for eigenvalue ``+1``.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractError, DimensionError, QubitCapError
from .options import get_option
from .pauli import PauliString

__all__ = ['StateVector', 'MeasurementBasis', 'BellIndex', 'Register',
           'prepare', 'apply_gate', 'measure', 'bell_measure', 'fidelity',
           'ux', 'uz', 'gate_matrix', 'bell_state', 'random_state',
           'spanning_inputs', 'max_entangled']

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2)

_FIXED_GATES = {
    'I': np.eye(2, dtype=complex),
    'H': np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2,
    'X': np.array([[0, 1], [1, 0]], dtype=complex),
    'Y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'Z': np.diag([1, -1]).astype(complex),
    'S': np.diag([1, 1j]),
    'CZ': np.diag([1, 1, 1, -1]).astype(complex),
    'CNOT': np.array([[1, 0, 0, 0],
                      [0, 1, 0, 0],
                      [0, 0, 0, 1],
                      [0, 0, 1, 0]], dtype=complex),
}

_SYMBOL_STATES = {
    '0': np.array([1, 0], dtype=complex),
    '1': np.array([0, 1], dtype=complex),
    '+': np.array([1, 1], dtype=complex) / SQRT2,
    '-': np.array([1, -1], dtype=complex) / SQRT2,
    '+i': np.array([1, 1j], dtype=complex) / SQRT2,
}


def ux(phi):
    """
    Rotation ``exp(-i phi X / 2)``

    Examples
    --------
    >>> np.allclose(ux(np.pi), -1j * gate_matrix('X'))
    True
    """
    return (np.cos(phi / 2) * _FIXED_GATES['I'] -
            1j * np.sin(phi / 2) * _FIXED_GATES['X'])


def uz(theta):
    """
    Rotation ``exp(-i theta Z / 2)``
    """
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def gate_matrix(name, param=None):
    """
    Matrix of a named gate

    Parameters
    ----------
    name : str
        One of ``'I', 'H', 'X', 'Y', 'Z', 'S', 'CZ', 'CNOT'``,
        ``'UX'`` or ``'UZ'``.
    param : float, optional
        Angle of ``'UX'`` and ``'UZ'``.
    """
    if name == 'UX':
        return ux(param)
    if name == 'UZ':
        return uz(param)
    try:
        return _FIXED_GATES[name]
    except KeyError:
        raise ValueError("Unknown gate {!r}".format(name))


@dataclass(frozen=True)
class MeasurementBasis:
    """
    Basis of a measurement

    Parameters
    ----------
    kind : str
        ``'Z'``, ``'X'``, ``'EQ'`` (equatorial) or ``'PAULI'``.
    angle : float
        Angle ``ω`` of an equatorial measurement of
        ``cos(ω)X + sin(ω)Y``.
    pauli : PauliString, optional
        Observable of a ``'PAULI'`` measurement, phase ``+1``.
    """
    kind: str
    angle: float = 0.0
    pauli: PauliString = None

    def __post_init__(self):
        if self.kind not in ('Z', 'X', 'EQ', 'PAULI'):
            raise ValueError(
                "Unknown measurement basis {!r}".format(self.kind))
        if not np.isfinite(self.angle):
            raise ContractError("Angle must be finite")
        if self.kind == 'PAULI':
            if self.pauli is None or self.pauli.phase != 0:
                raise ContractError(
                    "Pauli measurement needs an observable with "
                    "phase +1")

    @classmethod
    def z(cls):
        return cls('Z')

    @classmethod
    def x(cls):
        return cls('X')

    @classmethod
    def equatorial(cls, omega):
        return cls('EQ', float(omega))

    @classmethod
    def pauli_product(cls, pauli):
        if isinstance(pauli, str):
            pauli = PauliString.from_str(pauli)
        return cls('PAULI', pauli=pauli)

    def eigenvectors(self):
        """
        Eigenvectors for outcome ``0`` and outcome ``1``
        """
        if self.kind == 'Z':
            return _SYMBOL_STATES['0'], _SYMBOL_STATES['1']
        elif self.kind == 'X':
            return _SYMBOL_STATES['+'], _SYMBOL_STATES['-']
        elif self.kind == 'EQ':
            e = np.exp(1j * self.angle)
            return (np.array([1, e]) / SQRT2,
                    np.array([1, -e]) / SQRT2)
        raise ContractError("A Pauli product has no single-qubit "
                            "eigenvectors")


@dataclass(frozen=True)
class BellIndex:
    """
    Outcome of a Bell measurement

    The two measured bits ``(j1, j2)`` identify the Bell state
    ``(Z**j1 X**j2 ⊗ I)|Φ0⟩``. The index ``j`` is the binary number
    ``(j1, j1⊕j2)``, so ``0, 1, 2, 3`` stand for ``I, X, ZX, Z``.

    Examples
    --------
    >>> BellIndex(0, 1).j, BellIndex(1, 1).j, BellIndex(1, 0).j
    (1, 2, 3)
    >>> BellIndex.from_index(2)
    BellIndex(j1=1, j2=1)
    """
    j1: int
    j2: int

    @classmethod
    def from_index(cls, j):
        if j not in (0, 1, 2, 3):
            raise ValueError("Bell index must be 0..3, got {}".format(j))
        j1 = j >> 1
        return cls(j1, j1 ^ (j & 1))

    @property
    def j(self):
        return 2 * self.j1 + (self.j1 ^ self.j2)

    @property
    def bits(self):
        return (self.j1, self.j2)

    def pauli(self):
        """
        The operator ``Z**j1 X**j2`` on one qubit

        Examples
        --------
        >>> BellIndex.from_index(2).pauli()
        PauliString('+iY')
        """
        out = PauliString.identity(1)
        if self.j1:
            out = out * PauliString.from_str('Z')
        if self.j2:
            out = out * PauliString.from_str('X')
        return out

    def matrix(self):
        return self.pauli().to_matrix()


def _apply_matrix(tensor, mat, targets):
    k = len(targets)
    mat = np.asarray(mat, dtype=complex).reshape((2,) * (2 * k))
    out = np.tensordot(mat, tensor,
                       axes=(list(range(k, 2 * k)), list(targets)))
    return np.moveaxis(out, list(range(k)), list(targets))


def _check_cap(n):
    cap = get_option('max_qubits')
    if n > cap:
        raise QubitCapError(
            "State of {} qubits exceeds the cap of {} "
            "(option max_qubits)".format(n, cap))


class StateVector:
    """
    Pure state of ``n`` qubits

    Parameters
    ----------
    amps : array_like
        ``2**n`` complex amplitudes, normalized.

    Notes
    -----
    Methods return new states, the amplitudes of a state are never
    modified in place.

    Examples
    --------
    >>> s = prepare(2, '++')
    >>> s.n
    2
    >>> np.allclose(s.amps, 0.5)
    True
    """

    def __init__(self, amps):
        amps = np.array(amps, dtype=complex).ravel()
        n = int(np.log2(len(amps))) if len(amps) else -1
        if n < 0 or 2 ** n != len(amps):
            raise DimensionError(
                "Number of amplitudes must be a power of two, "
                "got {}".format(len(amps)))
        _check_cap(n)
        norm = np.vdot(amps, amps).real
        if abs(norm - 1) > get_option('norm_tolerance'):
            raise ContractError(
                "State is not normalized, squared norm is {}".format(norm))
        amps.flags.writeable = False
        self.amps = amps
        self.n = n

    @classmethod
    def _from_tensor(cls, tensor):
        return cls(tensor.reshape(-1))

    @property
    def tensor(self):
        return self.amps.reshape((2,) * self.n)

    def _check_qubits(self, qubits):
        for q in qubits:
            if not 0 <= q < self.n:
                raise DimensionError(
                    "Qubit {} out of range for {} qubits".format(
                        q, self.n))
        if len(set(qubits)) != len(qubits):
            raise DimensionError(
                "Qubits must be distinct, got {}".format(qubits))

    def apply_unitary(self, mat, targets):
        """
        Apply a unitary matrix to the target qubits
        """
        targets = tuple(int(q) for q in targets)
        self._check_qubits(targets)
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (2 ** len(targets),) * 2:
            raise DimensionError(
                "Matrix of shape {} does not act on {} qubit(s)".format(
                    mat.shape, len(targets)))
        return StateVector._from_tensor(
            _apply_matrix(self.tensor, mat, targets))

    def apply_gate(self, name, targets, param=None):
        """
        Apply a named gate

        Parameters
        ----------
        name : str
            Gate name, see :func:`gate_matrix`.
        targets : tuple
            Qubits, ``CNOT`` takes ``(control, target)``.
        param : float, optional
            Angle of a rotation.

        Examples
        --------
        >>> s = prepare(1, '0').apply_gate('UX', (0,), np.pi)
        >>> np.allclose(s.amps, [0, -1j])
        True
        """
        if isinstance(targets, int):
            targets = (targets,)
        return self.apply_unitary(gate_matrix(name, param), targets)

    def apply_pauli(self, pauli):
        """
        Apply a Pauli string, including its phase
        """
        if pauli.n != self.n:
            raise DimensionError(
                "Pauli on {} qubits, state has {}".format(pauli.n, self.n))
        tensor = self.tensor
        for q in pauli.support:
            tensor = _apply_matrix(tensor, _FIXED_GATES[pauli.letter(q)],
                                   (q,))
        return StateVector._from_tensor((1j ** pauli.phase) * tensor)

    def expectation(self, pauli):
        """
        Expectation value of a Hermitian Pauli string
        """
        if isinstance(pauli, str):
            pauli = PauliString.from_str(pauli)
        return float(np.vdot(self.amps, self.apply_pauli(pauli).amps).real)

    def measure(self, q, basis, policy, drop=False):
        """
        Measure and collapse

        Parameters
        ----------
        q : int
            Qubit. Ignored for a ``'PAULI'`` basis.
        basis : MeasurementBasis
            What to measure.
        policy : OutcomePolicy
            Decides the outcome.
        drop : bool
            If ``True``, remove the measured qubit from the state.
            Not possible for a ``'PAULI'`` basis.

        Returns
        -------
        outcome : int
            Measured bit.
        prob : float
            Probability of the outcome.
        state : StateVector
            Post-measurement state.
        """
        if basis.kind == 'PAULI':
            if drop:
                raise ContractError("Cannot drop qubits after a Pauli "
                                    "product measurement")
            return self._measure_pauli(basis.pauli, policy)

        self._check_qubits((q,))
        vectors = basis.eigenvectors()
        reduced = [np.tensordot(v.conj(), self.tensor, axes=([0], [q]))
                   for v in vectors]
        p0 = float(np.vdot(reduced[0], reduced[0]).real)
        outcome = policy.resolve(p0)
        prob = p0 if outcome == 0 else 1 - p0
        r = reduced[outcome] / np.sqrt(prob)
        logger.debug("measure qubit %d in %s: outcome %d (p=%.6f)",
                     q, basis.kind, outcome, prob)
        if drop:
            return outcome, prob, StateVector._from_tensor(r)
        full = np.moveaxis(np.tensordot(r, vectors[outcome], axes=0),
                           -1, q)
        return outcome, prob, StateVector._from_tensor(full)

    def _measure_pauli(self, pauli, policy):
        if pauli.n != self.n:
            raise DimensionError(
                "Observable on {} qubits, state has {}".format(
                    pauli.n, self.n))
        flipped = self.apply_pauli(pauli).amps
        branches = [(self.amps + flipped) / 2, (self.amps - flipped) / 2]
        p0 = float(np.vdot(branches[0], branches[0]).real)
        outcome = policy.resolve(p0)
        prob = p0 if outcome == 0 else 1 - p0
        logger.debug("measure %s: outcome %d (p=%.6f)",
                     pauli, outcome, prob)
        return outcome, prob, StateVector(branches[outcome] /
                                          np.sqrt(prob))

    def bell_measure(self, q1, q2, policy, rotation=None, drop=False):
        """
        Generalized Bell measurement

        Projects qubits ``(q1, q2)`` onto ``(U†⊗I)|Φj⟩`` by applying
        ``U`` (the ``rotation``) to ``q1`` followed by the standard
        Bell measurement.

        Parameters
        ----------
        q1, q2 : int
            Distinct qubits.
        policy : OutcomePolicy
            Decides the two outcome bits.
        rotation : array_like, optional
            One-qubit unitary ``U``. Identity if not given.
        drop : bool
            If ``True``, remove both measured qubits.

        Returns
        -------
        index : BellIndex
            Outcome.
        prob : float
            Probability of the outcome.
        state : StateVector
            Post-measurement state.
        """
        if q1 == q2:
            raise ContractError(
                "Bell measurement needs two distinct qubits")
        self._check_qubits((q1, q2))
        s = self
        if rotation is not None:
            s = s.apply_unitary(rotation, (q1,))
        s = s.apply_gate('CNOT', (q1, q2)).apply_gate('H', (q1,))
        j1, p1, s = s.measure(q1, MeasurementBasis.z(), policy)
        j2, p2, s = s.measure(q2, MeasurementBasis.z(), policy)
        if drop:
            for q, bit in sorted([(q1, j1), (q2, j2)], reverse=True):
                s = s.remove(q, _SYMBOL_STATES[str(bit)])
        return BellIndex(j1, j2), p1 * p2, s

    def remove(self, q, vector):
        """
        Remove a qubit known to be in the given one-qubit state

        Raises
        ------
        ContractError
            If the qubit is not in that state.
        """
        self._check_qubits((q,))
        vector = np.asarray(vector, dtype=complex)
        r = np.tensordot(vector.conj(), self.tensor, axes=([0], [q]))
        norm = float(np.vdot(r, r).real)
        if abs(norm - 1) > get_option('tolerance'):
            raise ContractError(
                "Qubit {} is not in the given state (overlap {})".format(
                    q, norm))
        return StateVector._from_tensor(r / np.sqrt(norm))

    def append(self, other):
        """
        Tensor product with other on the trailing qubits

        Parameters
        ----------
        other : StateVector or str
            State, or a string of one-qubit symbols.
        """
        if isinstance(other, str):
            other = prepare(len(other), other)
        _check_cap(self.n + other.n)
        return StateVector(np.kron(self.amps, other.amps))

    def move(self, src, dst):
        """
        Move qubit ``src`` to position ``dst``, others keep their order
        """
        self._check_qubits((src,))
        self._check_qubits((dst,))
        return StateVector._from_tensor(np.moveaxis(self.tensor, src, dst))

    def permute(self, order):
        """
        State whose qubit ``i`` is qubit ``order[i]`` of this state
        """
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise DimensionError(
                "{} is not a permutation of {} qubits".format(
                    order, self.n))
        return StateVector._from_tensor(np.transpose(self.tensor, order))

    def fidelity(self, other):
        return fidelity(self, other)

    def dump(self, nonzero=True):
        """
        Amplitudes as ``(index, re, im)`` lines

        Examples
        --------
        >>> print(prepare(2, '0+').dump())
        (0, 0.707106781187, 0)
        (1, 0.707106781187, 0)
        """
        tol = get_option('tolerance')
        lines = []
        for i, a in enumerate(self.amps):
            if nonzero and abs(a) < tol:
                continue
            lines.append('({}, {:.12g}, {:.12g})'.format(
                i, a.real + 0.0, a.imag + 0.0))
        return '\n'.join(lines)

    def __repr__(self):
        return '<StateVector n={}>'.format(self.n)


class Register:
    """
    State with named qubits

    Qubits of the initial state keep their integer positions as
    labels, qubits added later take the labels they are given.
    Measured qubits are removed.

    Examples
    --------
    >>> reg = Register(prepare(1, '0'))
    >>> reg.add('+', ['a'])
    >>> reg.gate('CNOT', ('a', 0))
    >>> reg.labels
    [0, 'a']
    >>> round(reg.select(['a', 0]).expectation('XX'), 12)
    1.0
    """

    def __init__(self, state):
        self.state = state
        self.labels = list(range(state.n))

    def pos(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise ContractError(
                "No live qubit labelled {!r}".format(label))

    def add(self, resource, labels):
        if set(labels) & set(self.labels):
            raise ContractError(
                "Labels {} are already in use".format(labels))
        self.state = self.state.append(resource)
        self.labels.extend(labels)

    def gate(self, name, labels, param=None):
        self.state = self.state.apply_gate(
            name, tuple(self.pos(q) for q in labels), param)

    def unitary(self, mat, labels):
        self.state = self.state.apply_unitary(
            mat, tuple(self.pos(q) for q in labels))

    def pauli(self, letters):
        """
        Apply the Pauli given by ``{label: letter}``
        """
        self.state = self.state.apply_pauli(PauliString.on(
            self.state.n, {self.pos(q): c for q, c in letters.items()}))

    def bell_measure(self, a, b, policy, rotation=None):
        index, prob, self.state = self.state.bell_measure(
            self.pos(a), self.pos(b), policy, rotation, drop=True)
        self.labels.remove(a)
        self.labels.remove(b)
        return index, prob

    def measure(self, label, basis, policy):
        outcome, prob, self.state = self.state.measure(
            self.pos(label), basis, policy, drop=True)
        self.labels.remove(label)
        return outcome, prob

    def measure_pauli(self, letters, policy):
        """
        Measure an observable given by ``{label: letter}``
        """
        obs = PauliString.on(self.state.n,
                             {self.pos(q): c for q, c in letters.items()})
        outcome, prob, self.state = self.state.measure(
            None, MeasurementBasis.pauli_product(obs), policy)
        return outcome, prob

    def select(self, labels):
        """
        State with the qubits in the order of ``labels``
        """
        labels = list(labels)
        if (len(labels) != len(self.labels) or
                set(labels) != set(self.labels)):
            raise ContractError(
                "Live qubits are {}, asked for {}".format(
                    self.labels, labels))
        return self.state.permute([self.pos(q) for q in labels])

    def restore(self, renames):
        """
        State in the original qubit order

        Parameters
        ----------
        renames : dict
            ``{original qubit: label now holding its state}``
        """
        n = len(self.labels)
        return self.select([renames.get(q, q) for q in range(n)])


def prepare(n, spec, attachments=None):
    """
    Product state of one-qubit symbols, after attached registers

    Parameters
    ----------
    n : int
        Number of symbol qubits.
    spec : str or list
        Symbols ``'0', '1', '+', '-'`` (and ``'+i'`` in a list),
        one per symbol qubit.
    attachments : list of array_like, optional
        Normalized amplitude vectors of input registers. They occupy
        the leading qubits, in order.

    Examples
    --------
    >>> prepare(1, '0').amps
    array([1.+0.j, 0.+0.j])
    """
    spec = list(spec)
    if len(spec) != n:
        raise DimensionError(
            "Got {} symbols for {} qubits".format(len(spec), n))
    registers = [np.asarray(a, dtype=complex).ravel()
                 for a in (attachments or [])]
    total = n + sum(int(np.log2(len(a))) for a in registers)
    _check_cap(total)
    tol = get_option('norm_tolerance')
    for a in registers:
        if abs(np.vdot(a, a).real - 1) > tol:
            raise ContractError("Attached register is not normalized")
    amps = np.ones(1, dtype=complex)
    for a in registers:
        amps = np.kron(amps, a)
    for sym in spec:
        try:
            amps = np.kron(amps, _SYMBOL_STATES[sym])
        except KeyError:
            raise ValueError("Unknown state symbol {!r}".format(sym))
    return StateVector(amps)


def apply_gate(s, name, targets, param=None):
    """
    Apply a named gate to a state, see :meth:`StateVector.apply_gate`
    """
    return s.apply_gate(name, targets, param)


def measure(s, q, basis, policy):
    """
    Measure qubit ``q`` of a state

    Returns
    -------
    outcome : int
        Measured bit, ``0`` for eigenvalue ``+1``.
    prob : float
        Probability of the outcome.
    state : StateVector
        Collapsed state on the same qubits.

    Examples
    --------
    >>> from mbqcmap.policy import OutcomePolicy
    >>> s = prepare(1, '+')
    >>> outcome, prob, _ = measure(s, 0, MeasurementBasis.equatorial(0),
    ...                            OutcomePolicy.sample(1))
    >>> outcome, round(prob, 12)
    (0, 1.0)
    """
    return s.measure(q, basis, policy)


def bell_measure(s, q1, q2, policy, rotation=None):
    """
    Generalized Bell measurement, see :meth:`StateVector.bell_measure`

    Returns
    -------
    index : BellIndex
        Outcome.
    state : StateVector
        Collapsed state on the same qubits.
    """
    index, _, state = s.bell_measure(q1, q2, policy, rotation)
    return index, state


def fidelity(a, b):
    """
    Overlap ``|<a|b>|``, insensitive to global phase

    Examples
    --------
    >>> fidelity(prepare(1, '0'), prepare(1, '1'))
    0.0
    """
    if a.n != b.n:
        raise DimensionError(
            "States have {} and {} qubits".format(a.n, b.n))
    return float(abs(np.vdot(a.amps, b.amps)))


def bell_state(j=0):
    """
    Bell state ``(σj ⊗ I)|Φ0⟩`` with ``σ0..σ3 = I, X, ZX, Z``
    """
    phi0 = np.array([1, 0, 0, 1], dtype=complex) / SQRT2
    sigma = BellIndex.from_index(j).matrix()
    return StateVector(np.kron(sigma, np.eye(2)) @ phi0)


def max_entangled(k):
    """
    State ``Σx |x⟩|x⟩`` of ``2k`` qubits, normalized

    The first ``k`` qubits are paired with the last ``k``.
    """
    dim = 2 ** k
    amps = np.eye(dim, dtype=complex).ravel() / np.sqrt(dim)
    return StateVector(amps)


def random_state(k, rng):
    """
    Haar-random pure state of ``k`` qubits

    Parameters
    ----------
    k : int
        Number of qubits.
    rng : numpy.random.Generator
        Source of randomness.
    """
    amps = rng.normal(size=2 ** k) + 1j * rng.normal(size=2 ** k)
    return StateVector(amps / np.linalg.norm(amps))


def spanning_inputs(k, seed=0):
    """
    Input states used to compare channels

    All computational basis states, ``|+...+⟩``, ``|+...+,+i⟩``
    and random states (one for a single qubit, two otherwise).

    Examples
    --------
    >>> len(spanning_inputs(1)), len(spanning_inputs(2))
    (5, 8)
    """
    rng = np.random.default_rng(seed)
    states = []
    for x in range(2 ** k):
        amps = np.zeros(2 ** k, dtype=complex)
        amps[x] = 1
        states.append(StateVector(amps))
    states.append(prepare(k, ['+'] * k))
    states.append(prepare(k, ['+'] * (k - 1) + ['+i']))
    for _ in range(1 if k == 1 else 2):
        states.append(random_state(k, rng))
    return states
