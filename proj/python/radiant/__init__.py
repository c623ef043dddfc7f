"""Collective spontaneous emission from atomic arrays, ion chains and vapors.

Thin python wrapper around the compiled ``_radiant`` extension module.
"""

try:
    from ._radiant import *  # noqa: F401,F403
    from ._radiant import __doc__ as _core_doc  # noqa: F401
except ImportError:  # development layout: extension on sys.path, not in-package
    from _radiant import *  # noqa: F401,F403

__version__ = "0.1.0"
