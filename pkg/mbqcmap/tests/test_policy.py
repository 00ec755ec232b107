import pytest

from mbqcmap.exceptions import ContractError, ZeroProbabilityError
from mbqcmap.policy import OutcomePolicy


def test_force_skips_determined_outcomes():
    policy = OutcomePolicy.force([1, 1])
    assert policy.resolve(1.0) == 0
    assert policy.resolve(0.0) == 1
    assert policy.resolve(0.5) == 1
    assert policy.remaining == 1
    with pytest.raises(ContractError):
        policy.assert_consumed()
    assert policy.resolve(0.25) == 1
    policy.assert_consumed()


def test_strict_force():
    policy = OutcomePolicy.force([0, 1], strict=True)
    assert policy.resolve(1.0) == 0
    with pytest.raises(ZeroProbabilityError):
        policy.resolve(1.0)

    policy = OutcomePolicy.force([0], strict=True)
    policy.resolve(0.5)
    with pytest.raises(ContractError):
        policy.resolve(0.5)


def test_sample_is_reproducible():
    a = OutcomePolicy.sample(7)
    b = OutcomePolicy.sample(7)
    bits_a = [a.resolve(0.5) for _ in range(50)]
    bits_b = [b.resolve(0.5) for _ in range(50)]
    assert bits_a == bits_b
    assert set(bits_a) == {0, 1}

    replay = a.replay()
    assert [replay.resolve(0.5) for _ in range(50)] == bits_a


def test_bell_indices():
    assert OutcomePolicy.from_bell_indices([0, 1, 2, 3]).bits == \
        [0, 0, 0, 1, 1, 1, 1, 0]


def test_unknown_mode():
    with pytest.raises(ValueError):
        OutcomePolicy('guess')
