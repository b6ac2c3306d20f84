"""Exact rectangle decomposition of persistence modules over finite grids."""

try:
    from ._rectdec import *  # noqa: F401,F403  (installed package layout)
    from . import _rectdec as _impl
except ImportError:  # in-build-tree layout: extension sits on sys.path directly
    from _rectdec import *  # noqa: F401,F403
    import _rectdec as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
