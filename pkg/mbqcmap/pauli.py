"""
Phased Pauli strings and their Clifford conjugation

A :class:`PauliString` on ``n`` qubits is stored as two bit vectors
``x`` and ``z`` and a phase exponent ``k`` so that the operator is

    i**k * P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}

where the letter ``P_q`` is ``I, X, Z`` or ``Y`` for
``(x_q, z_q) = (0, 0), (1, 0), (0, 1), (1, 1)``, and ``Y = iXZ``.
Qubit ``0`` is the leftmost letter.
"""
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .exceptions import DimensionError, ContractError
from .utils import verify_arg

__all__ = ['PauliString', 'CliffordGate', 'pauli_multiply',
           'pauli_commutes', 'conjugate_by_clifford']

_LETTERS = {'I': (0, 0), 'X': (1, 0), 'Z': (0, 1), 'Y': (1, 1)}
_SYMBOLS = 'IXZY'
_PREFIX = {0: '+', 1: '+i', 2: '-', 3: '-i'}
_PARSE_PREFIX = {'': 0, '+': 0, '+i': 1, 'i': 1, '-': 2, '-i': 3}
_PAULI_RE = re.compile(r'^\s*([+-]?i?)\s*([IXYZ]*)\s*$')

_MATRICES = {
    'I': np.eye(2, dtype=complex),
    'X': np.array([[0, 1], [1, 0]], dtype=complex),
    'Y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'Z': np.array([[1, 0], [0, -1]], dtype=complex),
}

CLIFFORD_KINDS = ('H', 'S', 'X', 'Y', 'Z', 'CNOT', 'CZ')


class PauliString:
    """
    Pauli operator with an exact phase

    Parameters
    ----------
    x : array_like
        X bits, one per qubit.
    z : array_like
        Z bits, one per qubit.
    phase : int
        Exponent ``k`` of the ``i**k`` prefactor, taken mod 4.

    Examples
    --------
    >>> p = PauliString.from_str('-XZI')
    >>> p
    PauliString('-XZI')
    >>> p.n, p.weight
    (3, 2)
    >>> PauliString.from_str('X') * PauliString.from_str('Z')
    PauliString('-iY')
    """

    def __init__(self, x, z, phase=0):
        x = np.array(x, dtype=np.uint8) % 2
        z = np.array(z, dtype=np.uint8) % 2
        if x.shape != z.shape or x.ndim != 1:
            raise DimensionError(
                "x and z must be vectors of equal length, "
                "got shapes {} and {}".format(x.shape, z.shape))
        x.flags.writeable = False
        z.flags.writeable = False
        self.x = x
        self.z = z
        self.phase = int(phase) % 4

    @classmethod
    def from_str(cls, s):
        """
        Create from text such as ``'+XZI'``, ``'-iY'`` or ``'ZZ'``
        """
        match = _PAULI_RE.match(s)
        if not match:
            raise ValueError("Cannot parse Pauli string {!r}".format(s))
        prefix, letters = match.groups()
        bits = [_LETTERS[c] for c in letters]
        x = [b[0] for b in bits]
        z = [b[1] for b in bits]
        return cls(x, z, _PARSE_PREFIX[prefix])

    @classmethod
    def identity(cls, n):
        return cls(np.zeros(n), np.zeros(n))

    @classmethod
    def on(cls, n, letters, phase=0):
        """
        Create from a sparse ``{qubit: letter}`` mapping

        Examples
        --------
        >>> PauliString.on(4, {0: 'Z', 3: 'X'})
        PauliString('+ZIIX')
        """
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q, letter in letters.items():
            if not 0 <= q < n:
                raise DimensionError(
                    "Qubit {} out of range for {} qubits".format(q, n))
            x[q], z[q] = _LETTERS[letter]
        return cls(x, z, phase)

    @property
    def n(self):
        return len(self.x)

    @property
    def letters(self):
        return ''.join(_SYMBOLS[a + 2*b] for a, b in zip(self.x, self.z))

    @property
    def weight(self):
        return int(np.count_nonzero(self.x | self.z))

    @property
    def support(self):
        return tuple(int(q) for q in np.flatnonzero(self.x | self.z))

    @property
    def sign(self):
        """
        Text prefix of the phase, one of ``'+', '-', '+i', '-i'``
        """
        return _PREFIX[self.phase]

    def is_hermitian(self):
        return self.phase % 2 == 0

    def letter(self, q):
        return _SYMBOLS[self.x[q] + 2*self.z[q]]

    def with_phase(self, phase):
        return PauliString(self.x, self.z, phase)

    def unsigned(self):
        return self.with_phase(0)

    def restrict(self, qubits):
        """
        Pauli on a subset of the qubits (phase kept)
        """
        qubits = list(qubits)
        return PauliString(self.x[qubits], self.z[qubits], self.phase)

    def commutes(self, other):
        return pauli_commutes(self, other)

    def to_matrix(self):
        """
        Dense matrix, qubit 0 as the most significant bit
        """
        mat = reduce(np.kron, (_MATRICES[c] for c in self.letters),
                     np.eye(1, dtype=complex))
        return (1j ** self.phase) * mat

    def __mul__(self, other):
        return pauli_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented
        return (self.phase == other.phase and
                np.array_equal(self.x, other.x) and
                np.array_equal(self.z, other.z))

    def __hash__(self):
        return hash((self.phase, self.x.tobytes(), self.z.tobytes()))

    def __str__(self):
        return self.sign + self.letters

    def __repr__(self):
        return "PauliString({!r})".format(str(self))


@dataclass(frozen=True)
class CliffordGate:
    """
    Clifford gate acting on one or two qubits

    Parameters
    ----------
    kind : str
        One of ``'H', 'S', 'X', 'Y', 'Z', 'CNOT', 'CZ'``.
    targets : tuple
        Qubit indices. ``CNOT`` is ``(control, target)``.
    """
    kind: str
    targets: tuple

    def __post_init__(self):
        verify_arg(self.kind, 'kind', CLIFFORD_KINDS)
        targets = tuple(int(q) for q in self.targets)
        object.__setattr__(self, 'targets', targets)
        arity = 2 if self.kind in ('CNOT', 'CZ') else 1
        if len(targets) != arity:
            raise ContractError(
                "{} takes {} qubit(s), got {}".format(
                    self.kind, arity, targets))
        if arity == 2 and targets[0] == targets[1]:
            raise ContractError(
                "{} needs two distinct qubits, got {}".format(
                    self.kind, targets))


def _check_same_length(a, b):
    if a.n != b.n:
        raise DimensionError(
            "Pauli strings have different lengths: {} and {}".format(
                a.n, b.n))


def product_phase(x1, z1, x2, z2):
    """
    Phase exponent picked up when multiplying letter rows

    The arrays may be 1-d (one string) or 2-d (rows of strings),
    the sum runs over the last axis.
    """
    x1, z1, x2, z2 = (np.asarray(a, dtype=np.int64)
                      for a in (x1, z1, x2, z2))
    x3 = x1 ^ x2
    z3 = z1 ^ z2
    return np.sum(x1*z1 + x2*z2 + 2*z1*x2 - x3*z3, axis=-1)


def pauli_multiply(a, b):
    """
    Product ``a·b`` with exact phase

    Parameters
    ----------
    a : PauliString
        Left factor
    b : PauliString
        Right factor

    Returns
    -------
    out : PauliString
        Product

    Examples
    --------
    >>> X, Z = PauliString.from_str('X'), PauliString.from_str('Z')
    >>> pauli_multiply(X, Z)
    PauliString('-iY')
    >>> pauli_multiply(PauliString.from_str('XX'),
    ...                PauliString.from_str('ZZ'))
    PauliString('-YY')
    >>> pauli_multiply(X, X)
    PauliString('+I')
    """
    _check_same_length(a, b)
    phase = a.phase + b.phase + product_phase(a.x, a.z, b.x, b.z)
    return PauliString(a.x ^ b.x, a.z ^ b.z, phase)


def pauli_commutes(a, b):
    """
    Whether two Pauli strings commute

    Examples
    --------
    >>> pauli_commutes(PauliString.from_str('ZZI'),
    ...                PauliString.from_str('IXZ'))
    False
    >>> pauli_commutes(PauliString.from_str('ZXII'),
    ...                PauliString.from_str('IIXZ'))
    True
    """
    _check_same_length(a, b)
    return bool(symplectic_product(a.x, a.z, b.x, b.z) == 0)


def symplectic_product(x1, z1, x2, z2):
    """
    Symplectic inner product over the last axis, 0 if commuting
    """
    x1, z1, x2, z2 = (np.asarray(a, dtype=np.uint8)
                      for a in (x1, z1, x2, z2))
    return np.sum((x1 & z2) ^ (z1 & x2), axis=-1) % 2


def apply_clifford(x, z, phase, gate):
    """
    Conjugate rows of Pauli strings by a Clifford gate in place

    Parameters
    ----------
    x : numpy.ndarray
        Array of X bits with shape ``(rows, n)``.
    z : numpy.ndarray
        Array of Z bits with shape ``(rows, n)``.
    phase : numpy.ndarray
        Phase exponents, shape ``(rows,)``.
    gate : CliffordGate
        Gate by which to conjugate.
    """
    n = x.shape[-1]
    if any(not 0 <= q < n for q in gate.targets):
        raise DimensionError(
            "Gate {} out of range for {} qubits".format(gate, n))

    kind = gate.kind
    if kind == 'CZ':
        a, b = gate.targets
        for g in (CliffordGate('H', (b,)), CliffordGate('CNOT', (a, b)),
                  CliffordGate('H', (b,))):
            apply_clifford(x, z, phase, g)
        return

    if kind == 'CNOT':
        c, t = gate.targets
        xc, zc, xt, zt = x[:, c], z[:, c], x[:, t], z[:, t]
        phase += 2 * (xc & zt & (xt ^ zc ^ 1))
        x[:, t] ^= xc
        z[:, c] ^= zt
    else:
        q, = gate.targets
        xq, zq = x[:, q], z[:, q]
        if kind == 'H':
            phase += 2 * (xq & zq)
            x[:, q], z[:, q] = zq.copy(), xq.copy()
        elif kind == 'S':
            phase += 2 * (xq & zq)
            z[:, q] ^= xq
        elif kind == 'X':
            phase += 2 * zq
        elif kind == 'Z':
            phase += 2 * xq
        elif kind == 'Y':
            phase += 2 * (xq ^ zq)
    phase %= 4


def conjugate_by_clifford(p, g):
    """
    Return ``g·p·g†``

    Parameters
    ----------
    p : PauliString
        Pauli to conjugate
    g : CliffordGate
        Conjugating gate

    Examples
    --------
    >>> XI = PauliString.from_str('XI')
    >>> conjugate_by_clifford(XI, CliffordGate('CZ', (0, 1)))
    PauliString('+XZ')
    >>> conjugate_by_clifford(XI, CliffordGate('CNOT', (0, 1)))
    PauliString('+XX')
    >>> conjugate_by_clifford(PauliString.from_str('X'),
    ...                       CliffordGate('H', (0,)))
    PauliString('+Z')
    """
    x = p.x.copy()[None, :]
    z = p.z.copy()[None, :]
    phase = np.array([p.phase], dtype=np.int64)
    apply_clifford(x, z, phase, g)
    return PauliString(x[0], z[0], phase[0])
