"""
Byproduct rules: Pauli corrections as parities of measurement outcomes
"""
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .exceptions import ContractError, DimensionError
from .pauli import PauliString
from .utils import all_bitstrings, parity

__all__ = ['ByproductRule', 'rule_from_branches']


def _frozen_sets(sets):
    return tuple(frozenset(int(i) for i in s) for s in sets)


@dataclass(frozen=True)
class ByproductRule:
    """
    Pauli correction on the output qubits

    For output ``i`` the correction is ``X**a_i Z**b_i`` with
    ``a_i`` the parity of the outcomes listed in ``x[i]`` and
    ``b_i`` the parity of those listed in ``z[i]``. Outcomes are
    referred to by their 0-based position in the outcome list.

    Parameters
    ----------
    x : tuple of frozenset
        Steps whose outcomes flip X, one set per output.
    z : tuple of frozenset
        Steps whose outcomes flip Z, one set per output.
    labels : tuple, optional
        Names of the outputs used in :meth:`formulas`.

    Examples
    --------
    >>> rule = ByproductRule([{1}], [{0}], labels=(3,))
    >>> rule.evaluate([1, 1])
    PauliString('+Y')
    >>> rule.formulas()
    {3: 'X^{j2} Z^{j1}'}
    """
    x: tuple
    z: tuple
    labels: tuple = None

    def __post_init__(self):
        x = _frozen_sets(self.x)
        z = _frozen_sets(self.z)
        if len(x) != len(z):
            raise DimensionError(
                "Need one X and one Z set per output, got {} and "
                "{}".format(len(x), len(z)))
        labels = self.labels
        if labels is None:
            labels = tuple(range(1, len(x) + 1))
        if len(labels) != len(x):
            raise DimensionError("Need one label per output")
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'z', z)
        object.__setattr__(self, 'labels', tuple(labels))

    @classmethod
    def identity(cls, k, labels=None):
        return cls([()] * k, [()] * k, labels)

    @property
    def n_outputs(self):
        return len(self.x)

    @property
    def steps(self):
        """
        Steps that the rule depends on
        """
        out = set()
        for s in self.x + self.z:
            out |= s
        return sorted(out)

    def is_identity(self):
        return not self.steps

    def evaluate(self, outcomes):
        """
        Correction for a list of outcomes

        Returns
        -------
        out : PauliString
            Hermitian Pauli on the outputs.
        """
        xs = [parity(outcomes, s) for s in self.x]
        zs = [parity(outcomes, s) for s in self.z]
        return PauliString(xs, zs)

    def formulas(self):
        """
        Parity formulas ``{label: 'X^{j..} Z^{j..}'}``

        Outcomes are named ``j1, j2, ...`` after their 1-based step.
        """
        def fmt(letter, steps):
            if not steps:
                return ''
            names = '+'.join('j{}'.format(s + 1) for s in sorted(steps))
            return '{}^{{{}}}'.format(letter, names)

        out = {}
        for label, xs, zs in zip(self.labels, self.x, self.z):
            text = ' '.join(t for t in (fmt('X', xs), fmt('Z', zs)) if t)
            out[label] = text or 'I'
        return out

    def shift(self, offset):
        """
        Rule with every step index moved by ``offset``
        """
        return ByproductRule(
            [{s + offset for s in xs} for xs in self.x],
            [{s + offset for s in zs} for zs in self.z],
            self.labels)

    def relabel(self, labels):
        return ByproductRule(self.x, self.z, labels)

    def combine(self, other):
        """
        Product of two rules on the same outputs
        """
        if other.n_outputs != self.n_outputs:
            raise DimensionError("Rules act on different outputs")
        return ByproductRule(
            [a ^ b for a, b in zip(self.x, other.x)],
            [a ^ b for a, b in zip(self.z, other.z)],
            self.labels)

    def tensor(self, other):
        """
        Rule on the outputs of both, self first
        """
        return ByproductRule(self.x + other.x, self.z + other.z,
                             self.labels + other.labels)

    def propagate(self, images, labels=None):
        """
        Push the correction through a Clifford unitary

        Parameters
        ----------
        images : dict
            ``{('X', i): PauliString, ('Z', i): PauliString}`` the
            conjugates ``U X_i U†`` and ``U Z_i U†`` on the new
            outputs, signs ignored.
        labels : tuple, optional
            Labels of the new outputs.
        """
        m = next(iter(images.values())).n
        new_x = [frozenset()] * m
        new_z = [frozenset()] * m
        for i in range(self.n_outputs):
            for letter, deps in (('X', self.x[i]), ('Z', self.z[i])):
                image = images[(letter, i)]
                for k in range(m):
                    if image.x[k]:
                        new_x[k] = new_x[k] ^ deps
                    if image.z[k]:
                        new_z[k] = new_z[k] ^ deps
        return ByproductRule(new_x, new_z, labels)

    def table(self, m):
        """
        Correction for every outcome string of ``m`` steps

        Returns
        -------
        out : pandas.DataFrame
            One row per branch with the outcome bits and the
            correction as text.
        """
        rows = []
        for bits in all_bitstrings(m):
            row = {'j{}'.format(i + 1): b for i, b in enumerate(bits)}
            row['byproduct'] = self.evaluate(bits).letters
            rows.append(row)
        return pd.DataFrame(rows)

    def to_dict(self):
        """
        JSON ready form, steps 1-based
        """
        return {str(label): {'x': sorted(s + 1 for s in xs),
                             'z': sorted(s + 1 for s in zs)}
                for label, xs, zs in zip(self.labels, self.x, self.z)}

    @classmethod
    def from_dict(cls, d, labels):
        """
        Inverse of :meth:`to_dict`
        """
        x = [{s - 1 for s in d[str(label)]['x']} for label in labels]
        z = [{s - 1 for s in d[str(label)]['z']} for label in labels]
        return cls(x, z, labels)


def rule_from_branches(branches, m, labels=None):
    """
    Fit a linear rule to observed corrections

    Parameters
    ----------
    branches : dict
        ``{outcome bits: PauliString}`` for every outcome string of
        ``m`` steps.
    m : int
        Number of steps.
    labels : tuple, optional
        Output labels.

    Raises
    ------
    ContractError
        If the corrections are not parities of the outcomes.

    Examples
    --------
    >>> b = {bits: PauliString([bits[1]], [bits[0]])
    ...      for bits in all_bitstrings(2)}
    >>> rule_from_branches(b, 2).formulas()
    {1: 'X^{j2} Z^{j1}'}
    """
    zero = (0,) * m
    needed = [zero] + [tuple(int(i == step) for i in range(m))
                       for step in range(m)]
    missing = [bits for bits in needed if bits not in branches]
    if missing:
        raise ContractError(
            "Cannot fit a rule without the branches {}".format(missing))
    if branches[zero].weight:
        raise ContractError(
            "Branch with all outcomes 0 needs correction {}".format(
                branches[zero]))

    k = branches[zero].n
    x = [set() for _ in range(k)]
    z = [set() for _ in range(k)]
    for step in range(m):
        unit = tuple(int(i == step) for i in range(m))
        p = branches[unit]
        for q in np.flatnonzero(p.x):
            x[q].add(step)
        for q in np.flatnonzero(p.z):
            z[q].add(step)

    rule = ByproductRule(x, z, labels)
    for bits, p in branches.items():
        if rule.evaluate(bits).unsigned() != p.unsigned():
            raise ContractError(
                "Correction {} of branch {} is not a parity of the "
                "outcomes".format(p, bits))
    return rule
