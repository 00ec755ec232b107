"""
Rewrite rules on circuits
"""
from .operators import RuleOperator

__all__ = ['insert_hh', 'cancel_hh', 'cz_cnot_identity',
           'cnot_cz_identity', 'commute_disjoint', 'commute_diagonal',
           'commute_cnot_cz',
           'uncommute_cnot_cz', 'cnot_on_plus_plus',
           'insert_cnot_plus_plus', 'equatorial_to_uz_x',
           'uz_x_to_equatorial', 'commute_uz_cz', 'uncommute_uz_cz',
           'commute_ux_z', 'uncommute_ux_z', 'commute_ux_h',
           'uncommute_ux_h', 'insert_rotation_pair',
           'cancel_rotation_pair', 'bell_transpose',
           'bell_transpose_inverse', 'box_bell_prep',
           'box_bell_meas', 'box_generalized_bell', 'unbox',
           'apply_rule', 'inverse', 'RULES']


class insert_hh(RuleOperator):
    """
    Insert the identity ``H H`` on a wire

    Parameters
    ----------
    qubit : int
        Wire.
    index : int
        Position of the first ``H`` in the new circuit.

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> c = Circuit(2, [Gate('CZ', (0, 1))], inputs=(0, 1),
    ...             outputs=(0, 1))
    >>> print((c >> insert_hh(qubit=1, index=1)).pretty())
    circuit n=2 inputs=(0, 1) outputs=(0, 1)
      CZ 0 1
      H 1
      H 1
    """

    def __init__(self, qubit, index):
        super().__init__(qubit=qubit, index=index)

    def inverse(self, before):
        return cancel_hh(index=self.index)


class cancel_hh(RuleOperator):
    """
    Remove two adjacent ``H`` on the same wire

    Parameters
    ----------
    index : int
        Position of the first ``H``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        qubit, = before.ops[self.index].qubits
        return insert_hh(qubit=qubit, index=self.index)


class cz_cnot_identity(RuleOperator):
    """
    Write ``CZ`` as ``(I⊗H) CNOT (I⊗H)``

    Parameters
    ----------
    index : int
        Position of the ``CZ``.
    target : int, optional
        Wire that gets the Hadamards and becomes the CNOT target.
        Defaults to the second qubit of the ``CZ``.

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> c = Circuit(2, [Gate('CZ', (0, 1))], inputs=(0, 1),
    ...             outputs=(0, 1))
    >>> print(cz_cnot_identity(c, index=0).pretty())
    circuit n=2 inputs=(0, 1) outputs=(0, 1)
      H 1
      CNOT 0 1
      H 1
    """

    def __init__(self, index, target=None):
        super().__init__(index=index, target=target)

    def inverse(self, before):
        return cnot_cz_identity(index=self.index,
                                qubits=before.ops[self.index].qubits)


class cnot_cz_identity(RuleOperator):
    """
    Replace ``(I⊗H) CNOT (I⊗H)`` by ``CZ``

    Parameters
    ----------
    index : int
        Position of the first ``H``.
    qubits : tuple, optional
        Qubit order of the new ``CZ``, ``(control, target)`` by
        default.
    """

    def __init__(self, index, qubits=None):
        super().__init__(index=index, qubits=qubits)

    def inverse(self, before):
        _, target = before.ops[self.index + 1].qubits
        return cz_cnot_identity(index=self.index, target=target)


class commute_disjoint(RuleOperator):
    """
    Swap two adjacent operations on disjoint wires

    The second operation may not depend on an outcome of the
    first. The rule is its own inverse.

    Parameters
    ----------
    index : int
        Position of the first operation.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return commute_disjoint(index=self.index)


class commute_diagonal(RuleOperator):
    """
    Swap two adjacent diagonal gates

    ``CZ``, ``Z`` and ``Uz`` gates commute with each other even when
    they share a wire. The rule is its own inverse.

    Parameters
    ----------
    index : int
        Position of the first gate.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return commute_diagonal(index=self.index)


class commute_cnot_cz(RuleOperator):
    """
    Move a CNOT ahead of the ``CZ`` before it

    ``CZ(x, t) CNOT(c, t)`` becomes ``CNOT(c, t) CZ(x, t) CZ(x, c)``
    in time order. A ``CZ`` that touches only the control commutes
    with the CNOT and the two are swapped.

    Parameters
    ----------
    index : int
        Position of the ``CZ``.

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> c = Circuit(3, [Gate('CZ', (4, 6)), Gate('CNOT', (5, 6))],
    ...             inputs=(4, 5, 6), outputs=(4, 5, 6))
    >>> print((c >> commute_cnot_cz(index=0)).pretty())
    circuit n=3 inputs=(4, 5, 6) outputs=(4, 5, 6)
      CNOT 5 6
      CZ 4 6
      CZ 4 5
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return uncommute_cnot_cz(index=self.index)


class uncommute_cnot_cz(RuleOperator):
    """
    Move a CNOT back behind a ``CZ``, undoing :class:`commute_cnot_cz`

    Parameters
    ----------
    index : int
        Position of the CNOT.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return commute_cnot_cz(index=self.index)


class cnot_on_plus_plus(RuleOperator):
    """
    Drop a CNOT acting on two freshly prepared ``|+⟩`` wires

    ``CNOT|+⟩|+⟩ = |+⟩|+⟩``. Both wires must be untouched since
    their ``|+⟩`` preparation.

    Parameters
    ----------
    index : int
        Position of the CNOT.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        control, target = before.ops[self.index].qubits
        return insert_cnot_plus_plus(control=control, target=target,
                                     index=self.index)


class insert_cnot_plus_plus(RuleOperator):
    """
    Insert a CNOT between two freshly prepared ``|+⟩`` wires

    Parameters
    ----------
    control, target : int
        Wires.
    index : int
        Position of the new CNOT.
    """

    def __init__(self, control, target, index):
        super().__init__(control=control, target=target, index=index)

    def inverse(self, before):
        return cnot_on_plus_plus(index=self.index)


class equatorial_to_uz_x(RuleOperator):
    """
    Replace an equatorial measurement by ``Uz`` and an X measurement

    Measuring ``cos(ω)X + sin(ω)Y`` is the same as applying
    ``Uz(-ω)`` and measuring X. Adaptive signs carry over.

    Parameters
    ----------
    index : int
        Position of the measurement.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return uz_x_to_equatorial(index=self.index)


class uz_x_to_equatorial(RuleOperator):
    """
    Merge ``Uz`` and the X measurement after it into one measurement

    Parameters
    ----------
    index : int
        Position of the ``Uz``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return equatorial_to_uz_x(index=self.index)


class commute_uz_cz(RuleOperator):
    """
    Move ``Uz`` ahead of the ``CZ`` before it

    Both are diagonal, so they commute.

    Parameters
    ----------
    index : int
        Position of the ``CZ``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return uncommute_uz_cz(index=self.index)


class uncommute_uz_cz(RuleOperator):
    """
    Move ``Uz`` behind the ``CZ`` after it

    Parameters
    ----------
    index : int
        Position of the ``Uz``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return commute_uz_cz(index=self.index)


class commute_ux_z(RuleOperator):
    """
    Move ``Ux`` ahead of the Z correction before it

    ``Ux(φ) Z = Z Ux(-φ)``, so the rotation takes over the outcomes
    of the correction and its sign becomes adaptive.

    Parameters
    ----------
    index : int
        Position of the correction.

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Correction, Gate, Measure
    >>> c = Circuit(2, [Measure(0, 'Z', key='k'),
    ...                 Correction('Z', 1, {'k'}), Gate('UX', (1,), 0.5)],
    ...             inputs=(0, 1), outputs=(1,))
    >>> print((c >> commute_ux_z(index=1)).pretty())
    circuit n=2 inputs=(0, 1) outputs=(1,)
      measure 0 Z -> k
      UX(0.5)[k] 1
      Z 1 if k
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return uncommute_ux_z(index=self.index)


class uncommute_ux_z(RuleOperator):
    """
    Move ``Ux`` behind the Z correction after it

    Parameters
    ----------
    index : int
        Position of the ``Ux``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return commute_ux_z(index=self.index)


class commute_ux_h(RuleOperator):
    """
    Move ``Ux`` to the right of the ``H`` after it

    ``H Ux(φ) = Uz(φ) H``, the rotation becomes ``Uz``.

    Parameters
    ----------
    index : int
        Position of the ``Ux``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return uncommute_ux_h(index=self.index)


class uncommute_ux_h(RuleOperator):
    """
    Move ``Uz`` to the left of the ``H`` before it, as ``Ux``

    Parameters
    ----------
    index : int
        Position of the ``H``.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return commute_ux_h(index=self.index)


class insert_rotation_pair(RuleOperator):
    """
    Insert the identity ``U(φ) U(-φ)`` on a wire

    Parameters
    ----------
    qubit : int
        Wire.
    index : int
        Position of ``U(φ)`` in the new circuit.
    gate : str
        ``'UX'`` or ``'UZ'``.
    angle : float
        Angle ``φ``.
    """

    def __init__(self, qubit, index, gate, angle):
        super().__init__(qubit=qubit, index=index, gate=gate,
                         angle=angle)

    def inverse(self, before):
        return cancel_rotation_pair(index=self.index)


class cancel_rotation_pair(RuleOperator):
    """
    Remove a rotation followed by its inverse on the same wire

    Parameters
    ----------
    index : int
        Position of the first rotation.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        g = before.ops[self.index]
        return insert_rotation_pair(qubit=g.qubits[0], index=self.index,
                                    gate=g.name, angle=g.param)


class bell_transpose(RuleOperator):
    """
    Move a one-qubit gate across a Bell pair

    ``(I⊗U)|Φ0⟩ = (Uᵀ⊗I)|Φ0⟩``. The gate right after a
    ``bell_prep`` box on ``(a, b)`` acts on ``b`` and is moved to
    ``a``. The gates of the circuit language equal their transpose
    up to a global phase.

    Parameters
    ----------
    index : int
        Position of the ``bell_prep`` box.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return bell_transpose_inverse(index=self.index)


class bell_transpose_inverse(RuleOperator):
    """
    Move a one-qubit gate after a Bell pair from ``a`` back to ``b``

    Parameters
    ----------
    index : int
        Position of the ``bell_prep`` box.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return bell_transpose(index=self.index)


class box_bell_prep(RuleOperator):
    """
    Identify the preparation of ``|Φ0⟩``

    Matches ``|+⟩|+⟩``, ``CZ(a, b)``, ``H(a)`` or ``|0⟩|0⟩``,
    ``H(a)``, ``CNOT(a, b)``.

    Parameters
    ----------
    index : int
        Position of the first preparation.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return unbox(index=self.index)


class box_bell_meas(RuleOperator):
    """
    Identify a Bell measurement

    Matches ``H(b)``, ``CZ(a, b)``, X on ``a``, X on ``b`` or
    ``CNOT(a, b)``, ``H(a)``, Z on ``a``, Z on ``b``. The outcome on
    ``a`` is ``j1`` and the one on ``b`` is ``j2`` of the Bell
    index, the projection is onto ``(Z**j1 X**j2 ⊗ I)|Φ0⟩``.

    Parameters
    ----------
    index : int
        Position of the first operation.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return unbox(index=self.index)


class box_generalized_bell(RuleOperator):
    """
    Identify a measurement in the basis ``(U†⊗I)|Φj⟩``

    Two shapes match:

    - ``Uz(θ)`` or ``Ux(φ)`` on ``a`` followed by a ``bell_meas``
      box on ``(a, b)``;
    - ``H(b)``, ``CZ(a, b)``, X on ``a`` with outcome ``k``,
      ``Uz(±φ)`` on ``b`` with the sign set by ``k``, X on ``b``.
      This is the rotation ``Ux(φ)``.

    Parameters
    ----------
    index : int
        Position of the first operation.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        return unbox(index=self.index)


class unbox(RuleOperator):
    """
    Open a box, the inverse of every box identification

    Parameters
    ----------
    index : int
        Position of the box.
    """

    def __init__(self, index):
        super().__init__(index=index)

    def inverse(self, before):
        tag = before.ops[self.index].tag
        return RULES['box_' + tag](index=self.index)


RULES = {cls.__name__: cls for cls in (
    insert_hh, cancel_hh, cz_cnot_identity, cnot_cz_identity,
    commute_disjoint, commute_diagonal, commute_cnot_cz,
    uncommute_cnot_cz,
    cnot_on_plus_plus, insert_cnot_plus_plus, equatorial_to_uz_x,
    uz_x_to_equatorial, commute_uz_cz, uncommute_uz_cz, commute_ux_z,
    uncommute_ux_z, commute_ux_h, uncommute_ux_h, insert_rotation_pair,
    cancel_rotation_pair, bell_transpose, bell_transpose_inverse,
    box_bell_prep, box_bell_meas,
    box_generalized_bell, unbox)}


def apply_rule(c, rule):
    """
    Apply a rule to a circuit

    Functional form of ``c >> rule``.

    Raises
    ------
    PatternMismatchError
        If the rule does not match at its site.
    """
    return c >> rule


def inverse(rule, before):
    """
    Rule that undoes ``rule`` applied to ``before``

    Examples
    --------
    >>> from mbqcmap.ir import Circuit, Gate
    >>> c = Circuit(2, [Gate('CZ', (0, 1))], inputs=(0, 1),
    ...             outputs=(0, 1))
    >>> r = cz_cnot_identity(index=0)
    >>> inverse(r, c)
    cnot_cz_identity(index=0, qubits=(0, 1))
    >>> (c >> r) >> inverse(r, c) == c
    True
    """
    return rule.inverse(before)
