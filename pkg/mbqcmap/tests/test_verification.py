import numpy as np
import pytest

from mbqcmap import verification
from mbqcmap.patterns import build_pattern
from mbqcmap.pauli import CliffordGate, PauliString
from mbqcmap.verification import (SUITES, cross_engine_check,
                                  random_clifford_circuit, run_suite,
                                  verify_gadgets, verify_mapping,
                                  verify_patterns, verify_scheduler)

COLUMNS = ['check', 'branches', 'worst_deficit', 'passed']


def assert_passed(report):
    failed = report[~report['passed']]
    assert failed.empty, failed.to_string()


def test_run_suite_patterns():
    report = run_suite('patterns', tol=1e-9)
    assert list(report.columns) == ['suite'] + COLUMNS
    assert set(report['suite']) == {'patterns'}
    assert_passed(report)
    branches = dict(zip(report['check'], report['branches']))
    assert branches['wire'] == 4
    assert branches['cnot_square'] == 256
    assert 'xrot(1.23457)' in branches


def test_verify_patterns_uses_the_seed(monkeypatch):
    seen = []
    real = verification.verify_pattern

    def recording(p, inputs=None, seed=0):
        seen.append((inputs, seed))
        return real(p, inputs, seed)

    monkeypatch.setattr(verification, '_pattern_cases',
                        lambda: [('wire', build_pattern('wire'))])
    monkeypatch.setattr(verification, 'verify_pattern', recording)
    report = verify_patterns(tol=1e-9, seed=7)
    assert_passed(report)
    assert seen == [(None, 0), ('spanning', 7)]


def test_run_suite_unknown():
    assert SUITES == ('patterns', 'gadgets', 'mapping', 'scheduler')
    with pytest.raises(ValueError):
        run_suite('everything')


def test_verify_gadgets():
    report = verify_gadgets(tol=1e-9, runs=0)
    assert list(report.columns) == COLUMNS
    assert_passed(report)
    checks = list(report['check'])
    assert checks[:4] == ['teleport_a', 'teleport_b', 'cnot_gadget',
                          'remote_cnot']
    assert 'remote_cz_B_cnot' in checks
    assert 'two_qubit_count(procedure_B)=2' in checks
    assert 'two_qubit_count(cnot_gadget)=5' in checks
    assert not any(c.startswith('repeat_until_success') for c in checks)
    rows = report.set_index('check')
    assert rows.loc['teleport_a', 'branches'] == 4
    assert rows.loc['cnot_gadget', 'branches'] == 16


def test_verify_gadgets_repeat_until_success():
    report = verify_gadgets(tol=1e-9, seed=3, runs=2000)
    row = report.iloc[-1]
    assert row['check'].startswith('repeat_until_success(mean=')
    assert row['branches'] == 2000
    assert row['passed']


def test_verify_mapping():
    report = verify_mapping(tol=1e-9)
    assert list(report['check']) == [
        'trace_wire', 'trace_xrot', 'trace_zrot', 'trace_cnot_tqc_to_1wqc',
        'trace_cnot_1wqc_to_tqc']
    assert_passed(report)
    assert (report['branches'] > 0).all()


def test_verify_scheduler():
    report = verify_scheduler(tol=1e-9, seed=1, graphs=5, seeds=2,
                              circuits=20)
    assert list(report['check']) == ['depth_B', 'execute_B',
                                     'depth_A_star3=4', 'cross_engine']
    assert_passed(report)
    assert list(report['branches'][:3]) == [5, 10, 1]


def test_cross_engine_check():
    row = cross_engine_check(circuits=40, seed=5, tol=1e-9)
    assert row['check'] == 'cross_engine'
    assert row['branches'] >= 40
    assert row['worst_deficit'] < 1e-9
    assert row['passed']


def test_random_clifford_circuit():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n, ops = random_clifford_circuit(rng, max_qubits=3, max_ops=10,
                                         max_measurements=3)
        assert 1 <= n <= 3
        assert 1 <= len(ops) <= 10
        observables = [op for op in ops if isinstance(op, PauliString)]
        assert 1 <= len(observables) <= 3
        for obs in observables:
            assert obs.n == n
            assert obs.weight > 0
        for op in ops:
            if isinstance(op, CliffordGate):
                assert max(op.targets) < n
                if n == 1:
                    assert op.kind in ('H', 'S')
