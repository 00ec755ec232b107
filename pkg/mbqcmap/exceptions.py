"""
Exceptions raised when a contract of the library is broken
"""

__all__ = ['DimensionError', 'ContractError', 'InvalidGraphError',
           'ZeroProbabilityError', 'QubitCapError',
           'PatternMismatchError', 'EquivalenceError', 'AttemptCapError']


class DimensionError(ValueError):
    """
    Operands have incompatible qubit counts or an index is out of range
    """


class ContractError(ValueError):
    """
    A precondition of an operation does not hold
    """


class InvalidGraphError(ValueError):
    """
    Graph has a self-loop, a duplicate edge or no edges where one is needed
    """


class ZeroProbabilityError(ContractError):
    """
    A forced measurement outcome cannot occur
    """


class QubitCapError(ContractError):
    """
    State would exceed the ``max_qubits`` option
    """


class PatternMismatchError(ValueError):
    """
    A rewrite rule does not match the circuit at its site
    """


class EquivalenceError(AssertionError):
    """
    Two circuits are not equivalent

    Parameters
    ----------
    msg : str
        Message
    counterexample : dict
        Description of the offending branch. It has the keys
        ``input`` (index into the input states), ``branch``
        (outcome bits of the first circuit) and ``probability``.
    """
    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample


class AttemptCapError(RuntimeError):
    """
    Repeat-until-success did not succeed within the attempt cap
    """
