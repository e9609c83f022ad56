"""Hourly peer-to-peer energy trading simulator for farm communities.

Thin re-export of the compiled _farmtrade module. Installed wheels carry the
extension inside this package; in-tree builds put it on sys.path instead.
"""

try:
    from ._farmtrade import *  # noqa: F401,F403
    from . import _farmtrade as _impl
except ImportError:
    from _farmtrade import *  # noqa: F401,F403
    import _farmtrade as _impl

__version__ = "0.1.0"
__all__ = [name for name in dir(_impl) if not name.startswith("_")]
