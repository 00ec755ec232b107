from .exceptions import *     # noqa
from .pauli import *          # noqa
from .policy import *         # noqa
from .tableau import *        # noqa
from .statevector import *    # noqa
from .frames import *         # noqa
from .patterns import *       # noqa
from .gadgets import *        # noqa
from .ir import *             # noqa
from .rewrite_rules import *  # noqa
from .equivalence import *    # noqa
from .mapping import *        # noqa
from .scheduler import *      # noqa
from .utils import ply        # noqa

__version__ = '0.1.0'


def _get_all_imports(d):
    """
    Return list of all the imports
    """
    # 1. No local variables
    # 2.`from Module import Something`, puts Module in
    #    the namespace. We do not want that
    import types
    lst = [name for name, obj in d.items()
           if not (name.startswith('_') or
                   isinstance(obj, types.ModuleType))]
    return lst


def _import_and_register_implementations():
    import mbqcmap.circuit  # noqa


_import_and_register_implementations()
__all__ = _get_all_imports(globals())
