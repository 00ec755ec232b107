import pytest

from mbqcmap.exceptions import QubitCapError
from mbqcmap.options import _int_from_env, get_option, options, set_option
from mbqcmap.statevector import prepare


def test_options_context():
    # Straight test
    old = set_option('tolerance', 1e-8)
    assert get_option('tolerance') == 1e-8
    with options(tolerance=1e-6):
        assert get_option('tolerance') == 1e-6
    assert get_option('tolerance') == 1e-8
    set_option('tolerance', old)

    # With some data
    with options(max_qubits=2):
        with pytest.raises(QubitCapError):
            prepare(3, '000')
    assert prepare(3, '000').n == 3

    # That the options context manager should not muffle
    # an exception.
    with pytest.raises(ValueError):
        with options(attempt_cap=3):
            raise ValueError()

    # The above exception should not leave a modified option
    assert get_option('attempt_cap') == 1000

    with pytest.raises(ValueError):
        assert not get_option('time_travel')


def test_max_qubits_from_environment(monkeypatch):
    monkeypatch.delenv('MBQC_MAX_QUBITS', raising=False)
    assert _int_from_env('MBQC_MAX_QUBITS', 14) == 14
    monkeypatch.setenv('MBQC_MAX_QUBITS', '9')
    assert _int_from_env('MBQC_MAX_QUBITS', 14) == 9
    monkeypatch.setenv('MBQC_MAX_QUBITS', 'lots')
    with pytest.raises(ValueError, match="MBQC_MAX_QUBITS .*'lots'"):
        _int_from_env('MBQC_MAX_QUBITS', 14)
