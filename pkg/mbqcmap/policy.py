"""
Outcome policies decide the results of random measurements
"""
import logging

import numpy as np

from .exceptions import ContractError, ZeroProbabilityError
from .options import get_option

__all__ = ['OutcomePolicy']

logger = logging.getLogger(__name__)


class OutcomePolicy:
    """
    Source of measurement outcomes

    A policy either samples outcomes from a seeded generator or
    replays a list of forced bits. Simulators ask it for the outcome
    of every measurement by passing the probability of outcome ``0``.

    Parameters
    ----------
    mode : str
        ``'sample'`` or ``'force'``.
    seed : int, optional
        Seed for the ``'sample'`` mode, a 64-bit unsigned integer.
    bits : list, optional
        Bits for the ``'force'`` mode.
    strict : bool
        Only for the ``'force'`` mode. If ``False``, bits are used
        only for measurements whose outcome is random and determined
        outcomes pass through without consuming a bit. If ``True``,
        every measurement consumes a bit and forcing an outcome of
        zero probability raises :class:`ZeroProbabilityError`.
        Strict forcing is what branch enumeration uses.

    Examples
    --------
    >>> policy = OutcomePolicy.force([1, 0])
    >>> policy.resolve(0.5), policy.resolve(1.0), policy.resolve(0.5)
    (1, 0, 0)
    >>> policy.history
    [1, 0]
    >>> strict = OutcomePolicy.force([1], strict=True)
    >>> strict.resolve(1.0)
    Traceback (most recent call last):
        ...
    mbqcmap.exceptions.ZeroProbabilityError: Forced outcome 1 has
    probability 0.0
    """

    def __init__(self, mode, seed=None, bits=None, strict=False):
        if mode not in ('sample', 'force'):
            raise ValueError("Unknown policy mode {!r}".format(mode))

        self.mode = mode
        self.seed = seed
        self.strict = strict
        self.history = []
        if mode == 'sample':
            self._rng = np.random.default_rng(seed)
            self.bits = None
        else:
            self.bits = [int(b) for b in bits]
            self._position = 0

    @classmethod
    def sample(cls, seed=0):
        return cls('sample', seed=seed)

    @classmethod
    def force(cls, bits, strict=False):
        return cls('force', bits=bits, strict=strict)

    @classmethod
    def from_bell_indices(cls, indices, strict=False):
        """
        Force the raw bits that give the listed Bell indices

        Each index ``j`` in ``0..3`` expands to the two measured
        bits ``(j1, j2)`` with ``j = (j1, j1⊕j2)`` in binary.

        Examples
        --------
        >>> OutcomePolicy.from_bell_indices([3, 0]).bits
        [1, 0, 0, 0]
        """
        bits = []
        for j in indices:
            j1 = j >> 1
            bits.extend([j1, j1 ^ (j & 1)])
        return cls.force(bits, strict=strict)

    @property
    def remaining(self):
        """
        Number of forced bits not yet consumed
        """
        if self.mode == 'sample':
            return None
        return len(self.bits) - self._position

    def resolve(self, p0):
        """
        Outcome of a measurement

        Parameters
        ----------
        p0 : float
            Probability of outcome ``0``.

        Returns
        -------
        out : int
            ``0`` or ``1``
        """
        tol = get_option('tolerance')
        random = tol < p0 < 1 - tol

        if not random and not (self.mode == 'force' and self.strict):
            return 0 if p0 >= 1 - tol else 1

        if self.mode == 'sample':
            bit = int(self._rng.random() >= p0)
        else:
            if self._position >= len(self.bits):
                raise ContractError(
                    "Ran out of forced outcomes after {} bits".format(
                        len(self.bits)))
            bit = self.bits[self._position]
            self._position += 1
            prob = p0 if bit == 0 else 1 - p0
            if prob < tol:
                raise ZeroProbabilityError(
                    "Forced outcome {} has probability {}".format(
                        bit, prob))

        self.history.append(bit)
        logger.debug("outcome %d (p0=%.6f, mode=%s)", bit, p0, self.mode)
        return bit

    def replay(self):
        """
        Forced policy that reproduces the random outcomes drawn so far
        """
        return OutcomePolicy.force(self.history)

    def assert_consumed(self):
        """
        Raise if forced bits were left unused
        """
        if self.mode == 'force' and self.remaining:
            raise ContractError(
                "{} forced outcome(s) were not consumed".format(
                    self.remaining))

    def __repr__(self):
        if self.mode == 'sample':
            return "OutcomePolicy.sample(seed={})".format(self.seed)
        return "OutcomePolicy.force({}, strict={})".format(
            self.bits, self.strict)
