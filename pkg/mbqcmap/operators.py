from copy import copy
from collections import defaultdict
import logging

from .ir import Circuit
from .utils import temporary_attr

logger = logging.getLogger(__name__)

# Registry for the rule implementations
# It is of the form {'datatype': {'rulename': ruleimplementation}}
REGISTRY = defaultdict(dict)

dataclass_lookup = {
    Circuit: 'circuit',
}

DATASTORE_TYPES = tuple(dataclass_lookup.keys())


def register_implementations(module, rule_names, datatype):
    """
    Register rule implementations in the module

    Parameters
    ----------
    module : module
        Module with the implementations.
    rule_names : list
        Names of rules implemented in the module.
    datatype : str
        A name of the datatype implemented. e.g 'circuit'
    """
    for name in rule_names:
        REGISTRY[datatype][name] = module[name]


# Single dispatch by hand, when piping the datatype is not
# known at the time the rule class is called.
def get_rule_function(data, rule):
    """
    Return function that implements the rule for given data type
    """
    try:
        datatype = dataclass_lookup[type(data)]
    except KeyError:
        for klass, type_ in dataclass_lookup.items():
            if isinstance(data, klass):
                datatype = type_
                break
        else:
            raise TypeError(
                "Data of type {} is not supported.".format(type(data))
            )
    try:
        return REGISTRY[datatype][rule]
    except KeyError:
        raise TypeError(
            "Could not find a {} implementation for the rule {} ".format(
                datatype, rule
            )
        )


class OptionalSingleCircuitArgument(type):
    """
    Metaclass for optional circuit as first argument

    Makes it possible to do both::

        circuit >> rule(index=3)
        rule(circuit, index=3)
    """
    def __call__(cls, *args, **kwargs):
        if len(args) and isinstance(args[0], DATASTORE_TYPES):
            return args[0] >> super().__call__(*args[1:], **kwargs)
        else:
            return super().__call__(*args, **kwargs)


class RuleOperator(metaclass=OptionalSingleCircuitArgument):
    """
    Base class for all rewrite rules

    A rule instance holds its site, the keyword arguments that
    locate where in the circuit it applies.
    """
    data = None

    def __init__(self, **site):
        self.site = site
        for key, value in site.items():
            setattr(self, key, value)

    @property
    def name(self):
        return self.__class__.__name__

    def inverse(self, before):
        """
        Rule that undoes this one

        Parameters
        ----------
        before : Circuit
            Circuit this rule was applied to.
        """
        raise NotImplementedError(
            "Rule {} has no inverse".format(self.name))

    def __rrshift__(self, other):
        """
        Overload the >> operator
        """
        self = copy(self)
        self.data = other
        func = get_rule_function(self.data, self.name)
        result = func(self)
        logger.debug("applied %s at %s", self.name, self.site)
        return result

    def __call__(self, data):
        self = copy(self)
        func = get_rule_function(data, self.name)
        with temporary_attr(self, 'data', data):
            result = func(self)
        return result

    def __repr__(self):
        args = ', '.join('{}={!r}'.format(k, v)
                         for k, v in sorted(self.site.items()))
        return '{}({})'.format(self.name, args)

    def __eq__(self, other):
        return (type(self) is type(other) and
                self.site == other.site)

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.site.items()))))
