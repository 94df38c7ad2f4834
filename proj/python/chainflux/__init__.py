"""Explicit conservation-law schemes as Markov chain transition tables.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from chainflux._core import *  # noqa: F401,F403
from chainflux._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
