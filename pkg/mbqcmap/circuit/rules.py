"""
Rewrite rule implementations for a :class:`~mbqcmap.ir.Circuit`
"""
from ..exceptions import ContractError, PatternMismatchError
from ..ir import Box, Correction, Gate, Measure, Prepare
from ..operators import register_implementations

__all__ = ['insert_hh', 'cancel_hh', 'cz_cnot_identity',
           'cnot_cz_identity', 'commute_disjoint', 'commute_diagonal',
           'commute_cnot_cz',
           'uncommute_cnot_cz', 'cnot_on_plus_plus',
           'insert_cnot_plus_plus', 'equatorial_to_uz_x',
           'uz_x_to_equatorial', 'commute_uz_cz', 'uncommute_uz_cz',
           'commute_ux_z', 'uncommute_ux_z', 'commute_ux_h',
           'uncommute_ux_h', 'insert_rotation_pair',
           'cancel_rotation_pair',
           'bell_transpose', 'bell_transpose_inverse', 'box_bell_prep',
           'box_bell_meas', 'box_generalized_bell', 'unbox']

_LOCAL_GATES = ('H', 'X', 'Y', 'Z', 'UX', 'UZ')
_DIAGONAL = ('Z', 'UZ', 'CZ')


def _mismatch(rule, what):
    return PatternMismatchError(
        "{} does not match at {}: {}".format(rule.name, rule.site, what))


def _take(rule, count):
    """
    The ``count`` operations at the rule's site
    """
    c = rule.data
    start = rule.index
    if start < 0 or start + count > len(c.ops):
        left = max(len(c.ops) - start, 0)
        raise _mismatch(rule, "needs {} operation(s) from index {}, {} "
                              "left".format(count, start, left))
    return c.ops[start:start + count]


def _rebuild(rule, count, new_ops):
    """
    Circuit with ``count`` operations at the site replaced
    """
    try:
        return rule.data.replace(rule.index, rule.index + count, new_ops)
    except ContractError as err:
        raise _mismatch(rule, str(err)) from err


def _is_gate(op, *names):
    return isinstance(op, Gate) and op.name in names


def _is_h(op, qubit=None):
    return (_is_gate(op, 'H') and
            (qubit is None or op.qubits == (qubit,)))


def _is_cz(op, pair):
    return _is_gate(op, 'CZ') and set(op.qubits) == set(pair)


def _is_measure(op, basis, qubit=None):
    return (isinstance(op, Measure) and op.basis == basis and
            (qubit is None or op.qubit == qubit))


def _produced(op):
    if isinstance(op, Box):
        return {m.key for m in op.flatten() if isinstance(m, Measure)}
    if isinstance(op, Measure):
        return {op.key}
    return set()


def _used(op):
    if isinstance(op, Box):
        return set().union(*(_used(o) for o in op.flatten()))
    return set(getattr(op, 'deps', ()))


def _fresh_plus(c, qubit, index):
    """
    Whether a wire is still in its prepared ``|+⟩`` at ``index``
    """
    last = None
    for op in c.ops[:index]:
        inner = op.flatten() if isinstance(op, Box) else [op]
        for o in inner:
            if qubit in o.qubits:
                last = o
    return isinstance(last, Prepare) and last.state == '+'


def insert_hh(rule):
    if not 0 <= rule.index <= len(rule.data.ops):
        raise _mismatch(rule, "index out of range")
    h = Gate('H', (rule.qubit,))
    return _rebuild(rule, 0, [h, h])


def cancel_hh(rule):
    a, b = _take(rule, 2)
    if not (_is_h(a) and _is_h(b, a.qubits[0])):
        raise _mismatch(rule, "not two H on the same wire")
    return _rebuild(rule, 2, [])


def cz_cnot_identity(rule):
    op, = _take(rule, 1)
    if not _is_gate(op, 'CZ'):
        raise _mismatch(rule, "not a CZ")
    a, b = op.qubits
    target = b if rule.target is None else rule.target
    if target not in op.qubits:
        raise _mismatch(rule, "target {} is not on the CZ".format(target))
    control = a if target == b else b
    h = Gate('H', (target,))
    return _rebuild(rule, 1, [h, Gate('CNOT', (control, target)), h])


def cnot_cz_identity(rule):
    h1, cnot, h2 = _take(rule, 3)
    if not _is_gate(cnot, 'CNOT'):
        raise _mismatch(rule, "no CNOT in the middle")
    control, target = cnot.qubits
    if not (_is_h(h1, target) and _is_h(h2, target)):
        raise _mismatch(rule, "the CNOT target is not dressed by H")
    qubits = cnot.qubits if rule.qubits is None else tuple(rule.qubits)
    if set(qubits) != set(cnot.qubits):
        raise _mismatch(rule, "qubits {} differ from the CNOT".format(
            qubits))
    return _rebuild(rule, 3, [Gate('CZ', qubits)])


def commute_disjoint(rule):
    a, b = _take(rule, 2)
    if set(a.qubits) & set(b.qubits):
        raise _mismatch(rule, "the operations share a wire")
    if _produced(a) & _used(b):
        raise _mismatch(rule, "the second operation uses an outcome of "
                              "the first")
    return _rebuild(rule, 2, [b, a])


def commute_diagonal(rule):
    a, b = _take(rule, 2)
    if not (_is_gate(a, *_DIAGONAL) and _is_gate(b, *_DIAGONAL)):
        raise _mismatch(rule, "not two diagonal gates")
    return _rebuild(rule, 2, [b, a])


def commute_cnot_cz(rule):
    cz, cnot = _take(rule, 2)
    if not (_is_gate(cz, 'CZ') and _is_gate(cnot, 'CNOT')):
        raise _mismatch(rule, "not a CZ followed by a CNOT")
    control, target = cnot.qubits
    pair = set(cz.qubits)
    if control in pair and target not in pair:
        return _rebuild(rule, 2, [cnot, cz])
    if target in pair and control not in pair:
        other, = pair - {target}
        return _rebuild(rule, 2, [cnot, cz, Gate('CZ', (other, control))])
    raise _mismatch(rule, "the CZ must touch exactly one CNOT wire")


def uncommute_cnot_cz(rule):
    cnot, cz = _take(rule, 2)
    if not (_is_gate(cnot, 'CNOT') and _is_gate(cz, 'CZ')):
        raise _mismatch(rule, "not a CNOT followed by a CZ")
    control, target = cnot.qubits
    pair = set(cz.qubits)
    if control in pair and target not in pair:
        return _rebuild(rule, 2, [cz, cnot])
    if target in pair and control not in pair:
        other, = pair - {target}
        ops = rule.data.ops
        extra = ops[rule.index + 2] if rule.index + 2 < len(ops) else None
        if _is_cz(extra, (other, control)):
            return _rebuild(rule, 3, [cz, cnot])
        raise _mismatch(rule, "CZ({}, {}) is missing".format(
            other, control))
    raise _mismatch(rule, "the CZ must touch exactly one CNOT wire")


def cnot_on_plus_plus(rule):
    op, = _take(rule, 1)
    if not _is_gate(op, 'CNOT'):
        raise _mismatch(rule, "not a CNOT")
    for q in op.qubits:
        if not _fresh_plus(rule.data, q, rule.index):
            raise _mismatch(rule, "wire {} is not a fresh |+⟩".format(q))
    return _rebuild(rule, 1, [])


def insert_cnot_plus_plus(rule):
    if not 0 <= rule.index <= len(rule.data.ops):
        raise _mismatch(rule, "index out of range")
    for q in (rule.control, rule.target):
        if not _fresh_plus(rule.data, q, rule.index):
            raise _mismatch(rule, "wire {} is not a fresh |+⟩".format(q))
    return _rebuild(rule, 0, [Gate('CNOT', (rule.control, rule.target))])


def equatorial_to_uz_x(rule):
    op, = _take(rule, 1)
    if not _is_measure(op, 'EQ'):
        raise _mismatch(rule, "not an equatorial measurement")
    return _rebuild(rule, 1, [
        Gate('UZ', op.qubits, -op.angle, op.deps),
        Measure(op.qubit, 'X', key=op.key)])


def uz_x_to_equatorial(rule):
    g, m = _take(rule, 2)
    if not (_is_gate(g, 'UZ') and _is_measure(m, 'X', g.qubits[0])):
        raise _mismatch(rule, "not Uz followed by an X measurement")
    return _rebuild(rule, 2, [
        Measure(m.qubit, 'EQ', -g.param, g.deps, key=m.key)])


def commute_uz_cz(rule):
    cz, g = _take(rule, 2)
    if not (_is_gate(cz, 'CZ') and _is_gate(g, 'UZ') and
            g.qubits[0] in cz.qubits):
        raise _mismatch(rule, "not a CZ followed by Uz on one of its "
                              "wires")
    return _rebuild(rule, 2, [g, cz])


def uncommute_uz_cz(rule):
    g, cz = _take(rule, 2)
    if not (_is_gate(g, 'UZ') and _is_gate(cz, 'CZ') and
            g.qubits[0] in cz.qubits):
        raise _mismatch(rule, "not Uz followed by a CZ on its wire")
    return _rebuild(rule, 2, [cz, g])


def _is_correction(op, letter, qubit):
    return (isinstance(op, Correction) and op.letter == letter and
            op.qubit == qubit)


def commute_ux_z(rule):
    z, g = _take(rule, 2)
    if not (_is_gate(g, 'UX') and _is_correction(z, 'Z', g.qubits[0])):
        raise _mismatch(rule, "not a Z correction followed by Ux on its "
                              "wire")
    return _rebuild(rule, 2, [
        Gate('UX', g.qubits, g.param, g.deps ^ z.deps), z])


def uncommute_ux_z(rule):
    g, z = _take(rule, 2)
    if not (_is_gate(g, 'UX') and _is_correction(z, 'Z', g.qubits[0])):
        raise _mismatch(rule, "not Ux followed by a Z correction on its "
                              "wire")
    return _rebuild(rule, 2, [
        z, Gate('UX', g.qubits, g.param, g.deps ^ z.deps)])


def commute_ux_h(rule):
    g, h = _take(rule, 2)
    if not (_is_gate(g, 'UX') and _is_h(h, g.qubits[0])):
        raise _mismatch(rule, "not Ux followed by H on its wire")
    return _rebuild(rule, 2, [h, Gate('UZ', g.qubits, g.param, g.deps)])


def uncommute_ux_h(rule):
    h, g = _take(rule, 2)
    if not (_is_gate(g, 'UZ') and _is_h(h, g.qubits[0])):
        raise _mismatch(rule, "not H followed by Uz on its wire")
    return _rebuild(rule, 2, [Gate('UX', g.qubits, g.param, g.deps), h])


def insert_rotation_pair(rule):
    if not 0 <= rule.index <= len(rule.data.ops):
        raise _mismatch(rule, "index out of range")
    if rule.gate not in ('UX', 'UZ'):
        raise _mismatch(rule, "{!r} is not a rotation".format(rule.gate))
    q = (rule.qubit,)
    return _rebuild(rule, 0, [Gate(rule.gate, q, rule.angle),
                              Gate(rule.gate, q, -rule.angle)])


def cancel_rotation_pair(rule):
    g1, g2 = _take(rule, 2)
    if not (_is_gate(g1, 'UX', 'UZ') and _is_gate(g2, g1.name) and
            g1.qubits == g2.qubits and not (g1.deps or g2.deps) and
            g1.param == -g2.param):
        raise _mismatch(rule, "not a rotation followed by its inverse")
    return _rebuild(rule, 2, [])


def _transpose(rule, src, dst):
    box, g = _take(rule, 2)
    if not (isinstance(box, Box) and box.tag == 'bell_prep'):
        raise _mismatch(rule, "no bell_prep box at the site")
    a, b = box.qubits
    src, dst = (a, b)[src], (a, b)[dst]
    if not (_is_gate(g, *_LOCAL_GATES) and g.qubits == (src,)):
        raise _mismatch(rule, "no one-qubit gate on wire {} after the "
                              "box".format(src))
    return _rebuild(rule, 2, [box, Gate(g.name, (dst,), g.param, g.deps)])


def bell_transpose(rule):
    return _transpose(rule, 1, 0)


def bell_transpose_inverse(rule):
    return _transpose(rule, 0, 1)


def box_bell_prep(rule):
    p1, p2, g1, g2 = _take(rule, 4)
    if not (isinstance(p1, Prepare) and isinstance(p2, Prepare)):
        raise _mismatch(rule, "does not start with two preparations")
    a, b = p1.qubit, p2.qubit
    cz_form = (p1.state == p2.state == '+' and _is_cz(g1, (a, b)) and
               _is_h(g2, a))
    cnot_form = (p1.state == p2.state == '0' and _is_h(g1, a) and
                 _is_gate(g2, 'CNOT') and g2.qubits == (a, b))
    if not (cz_form or cnot_form):
        raise _mismatch(rule, "not a preparation of |Φ0⟩")
    return _rebuild(rule, 4, [Box('bell_prep', (a, b), (p1, p2, g1, g2))])


def box_bell_meas(rule):
    g1, g2, m1, m2 = _take(rule, 4)
    if not (isinstance(m1, Measure) and isinstance(m2, Measure)):
        raise _mismatch(rule, "does not end with two measurements")
    a, b = m1.qubit, m2.qubit
    cz_form = (_is_h(g1, b) and _is_cz(g2, (a, b)) and
               m1.basis == m2.basis == 'X')
    cnot_form = (_is_gate(g1, 'CNOT') and g1.qubits == (a, b) and
                 _is_h(g2, a) and m1.basis == m2.basis == 'Z')
    if not (cz_form or cnot_form):
        raise _mismatch(rule, "not a Bell measurement")
    return _rebuild(rule, 4, [Box('bell_meas', (a, b), (g1, g2, m1, m2))])


def box_generalized_bell(rule):
    first, = _take(rule, 1)
    if _is_gate(first, 'UX', 'UZ'):
        g, box = _take(rule, 2)
        if not (isinstance(box, Box) and box.tag == 'bell_meas' and
                g.qubits == box.qubits[:1] and not g.deps):
            raise _mismatch(rule, "rotation is not followed by a Bell "
                                  "measurement on its wire")
        return _rebuild(rule, 2, [Box('generalized_bell', box.qubits,
                                      (g, box), (g.name, g.param))])

    ops = _take(rule, 5)
    h, cz, m1, g, m2 = ops
    if not (isinstance(m1, Measure) and isinstance(m2, Measure)):
        raise _mismatch(rule, "no measurements at the site")
    a, b = m1.qubit, m2.qubit
    if not (_is_h(h, b) and _is_cz(cz, (a, b)) and
            m1.basis == m2.basis == 'X' and _is_gate(g, 'UZ') and
            g.qubits == (b,) and g.deps == {m1.key}):
        raise _mismatch(rule, "not a Bell measurement with an adaptive "
                              "rotation")
    return _rebuild(rule, 5, [Box('generalized_bell', (a, b), ops,
                                  ('UX', g.param))])


def unbox(rule):
    box, = _take(rule, 1)
    if not isinstance(box, Box):
        raise _mismatch(rule, "not a box")
    return _rebuild(rule, 1, box.ops)


register_implementations(globals(), __all__, 'circuit')
