import json

import pytest

from mbqcmap.equivalence import branch_table, verify_equivalence
from mbqcmap.exceptions import PatternMismatchError
from mbqcmap.ir import Gate, Measure
from mbqcmap.mapping import (TRACES, bell_meas_box, bell_prep_box,
                             build_trace, circuit_to_pattern,
                             cnot_gadget_circuit, generalized_bell_basis,
                             map_rotation_to_generalized_bell,
                             map_wire_to_teleportation, pattern_to_circuit,
                             same_structure, teleportation_circuit)
from mbqcmap.patterns import build_pattern
from mbqcmap.rewrite_rules import box_generalized_bell
from mbqcmap.statevector import StateVector


@pytest.mark.parametrize('kind, params', [
    ('wire', ()),
    ('xrot', (0.3,)),
    ('zrot', (1.2,)),
    ('cnot6', ()),
    ('remote_cz', ()),
])
def test_pattern_circuit_roundtrip(kind, params):
    p = build_pattern(kind, *params)
    c = pattern_to_circuit(p)
    assert c.name == kind
    assert len(c.measurements) == len(p.plan)
    assert same_structure(circuit_to_pattern(c), p)


def test_pattern_to_circuit_keys():
    c = pattern_to_circuit(build_pattern('xrot', 0.3))
    assert c.keys == ('j1', 'j2')
    m = c.measurements[1]
    assert m.basis == 'EQ'
    assert m.deps == {'j1'}
    assert m.angle == pytest.approx(-0.3)


def test_circuit_to_pattern_rejects_other_gates():
    c = teleportation_circuit()
    with pytest.raises(PatternMismatchError):
        circuit_to_pattern(c)


def test_same_structure():
    wire = build_pattern('wire')
    assert same_structure(wire, wire)
    assert not same_structure(wire, build_pattern('xrot', 0.3))
    assert not same_structure(wire, build_pattern('zrot', 0.3))
    assert not same_structure(build_pattern('cnot6'),
                              build_pattern('remote_cz'))


def test_bell_boxes():
    box = bell_prep_box(2, 3)
    assert box.tag == 'bell_prep'
    assert box.ops[-1] == Gate('H', (2,))
    box = bell_prep_box(2, 3, form='cnot')
    assert box.ops[-1] == Gate('CNOT', (2, 3))
    box = bell_meas_box(1, 2, ('a', 'b'), form='cnot')
    assert [op.key for op in box.ops if isinstance(op, Measure)] == \
        ['a', 'b']
    with pytest.raises(ValueError):
        bell_prep_box(2, 3, form='swap')


def test_teleportation_circuit():
    c = teleportation_circuit()
    assert [box.tag for box in c.boxes] == ['bell_prep', 'bell_meas']
    c = teleportation_circuit(('UX', 0.4))
    box = c.boxes[1]
    assert box.tag == 'generalized_bell'
    assert box.rotation == ('UX', 0.4)
    with pytest.raises(ValueError):
        teleportation_circuit(('UY', 0.4))


def test_wire_trace():
    trace = map_wire_to_teleportation()
    assert len(trace) == 3
    assert trace.name == 'wire'
    assert trace.start == pattern_to_circuit(build_pattern('wire'))
    report = trace.validate()
    assert list(report['step']) == [1, 2, 3]
    assert report['passed'].all()
    verify_equivalence(trace.end, teleportation_circuit())


@pytest.mark.parametrize('kind, angle', [('xrot', 0.25), ('zrot', 0.25),
                                         ('xrot', 1.234567)])
def test_rotation_trace(kind, angle):
    trace = map_rotation_to_generalized_bell(build_pattern(kind, angle))
    assert trace.validate()['passed'].all()
    box, = [b for b in trace.end.boxes if b.tag == 'generalized_bell']
    assert box.rotation[0] == 'U' + kind[0].upper()
    assert box.rotation[1] == pytest.approx(angle)
    verify_equivalence(trace.end, teleportation_circuit(box.rotation))


def test_rotation_trace_zero_angle():
    trace = map_rotation_to_generalized_bell(build_pattern('xrot', 0))
    assert [step.rule.name for step in trace.steps] == \
        ['insert_hh', 'box_bell_prep', 'box_bell_meas']


def test_xrot_trace_derives_the_basis():
    trace = map_rotation_to_generalized_bell(build_pattern('xrot', 0.3))
    names = trace.rule_names()
    assert 'bell_transpose' in names
    assert 'insert_hh' in names
    assert 'commute_ux_h' in names
    assert names.index('bell_transpose') < names.index(
        'box_generalized_bell')
    assert names[-1] == 'box_generalized_bell'

    step = trace.steps[-1]
    assert step.support.end.ops[11].param == pytest.approx(0.3)
    assert trace.validate()['passed'].all()

    steps = json.loads(trace.to_json())
    assert 'support' not in steps[0]
    assert [s['rule'] for s in steps[-1]['support']] == \
        step.support.rule_names()
    assert '-- 4. derived by' in trace.pretty()


@pytest.mark.parametrize('angle', [0.3, -1.1])
def test_generalized_bell_basis(angle):
    trace = generalized_bell_basis(angle)
    assert trace.validate()['passed'].all()
    assert trace.rule_names()[:3] == \
        ['insert_rotation_pair', 'commute_ux_z', 'bell_transpose']

    # the prepared state is always found again
    rows = branch_table(trace.end, StateVector([1]))
    assert len(rows) == 4
    for row in rows:
        assert row['bits'][:2] == row['bits'][2:]
        assert row['probability'] == pytest.approx(0.25)

    end = trace.end
    g = end.ops[11]
    assert g == Gate('UZ', (2,), angle, {'k1'})
    adaptive = end.replace(11, 12, [Gate('UZ', (2,), angle, {'j1'})])
    boxed = adaptive >> box_generalized_bell(index=8)
    assert boxed.boxes[-1].rotation == ('UX', angle)
    verify_equivalence(end, boxed)


def test_mapping_rejects_other_patterns():
    with pytest.raises(PatternMismatchError):
        map_wire_to_teleportation(build_pattern('cnot6'))
    with pytest.raises(PatternMismatchError):
        map_wire_to_teleportation(build_pattern('xrot', 0.3))
    with pytest.raises(PatternMismatchError):
        map_rotation_to_generalized_bell(build_pattern('remote_cz'))
    with pytest.raises(PatternMismatchError):
        map_rotation_to_generalized_bell(build_pattern('euler', 1, 2, 3))


def test_cnot_trace_to_pattern():
    trace = build_trace('cnot_tqc_to_1wqc')
    assert trace.start == cnot_gadget_circuit()
    end = trace.end
    assert end.count(Gate, 'CNOT') == 0
    assert end.count(Gate, 'H') == 0
    assert end.boxes == []
    assert same_structure(circuit_to_pattern(end), build_pattern('cnot6'))
    assert trace.validate()['passed'].all()


def test_cnot_trace_to_teleportation():
    trace = build_trace('cnot_1wqc_to_tqc')
    assert trace.name == 'cnot_1wqc_to_tqc'
    assert trace.start == pattern_to_circuit(build_pattern('cnot6'))
    assert trace.end == cnot_gadget_circuit()
    assert len(trace) == len(build_trace('cnot_tqc_to_1wqc'))


def test_inverted_trace():
    trace = map_wire_to_teleportation()
    back = trace.inverted()
    assert back.name == 'wire_inverted'
    assert back.start == trace.end
    assert back.end == trace.start
    assert [step.rule.name for step in back.steps] == \
        ['unbox', 'unbox', 'cancel_hh']

    with pytest.raises(PatternMismatchError):
        trace.inverted(start=teleportation_circuit())


def test_trace_json_and_pretty():
    trace = build_trace('wire')
    steps = json.loads(trace.to_json())
    assert [s['rule'] for s in steps] == \
        ['insert_hh', 'box_bell_prep', 'box_bell_meas']
    assert steps[0]['site'] == {'index': 3, 'qubit': 2}
    assert steps[-1]['circuit_hash'] == trace.end.digest()
    assert all(len(s['circuit_hash']) == 16 for s in steps)

    text = trace.pretty()
    assert text.splitlines()[0] == 'trace wire (3 steps)'
    assert '-- 1. insert_hh(index=3, qubit=2)' in text


def test_build_trace():
    assert set(TRACES) == {'wire', 'xrot', 'zrot', 'cnot_tqc_to_1wqc',
                           'cnot_1wqc_to_tqc'}
    trace = build_trace('zrot', angle=0.7)
    assert trace.name == 'zrot'
    box = trace.end.boxes[1]
    assert box.rotation[0] == 'UZ'
    with pytest.raises(ValueError):
        build_trace('swap')
