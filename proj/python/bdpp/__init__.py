"""Regime-switching Beddington-DeAngelis predator-prey simulator."""

try:
    from ._bdpp import *  # noqa: F401,F403  (installed package layout)
    from ._bdpp import __doc__ as _doc
except ImportError:  # build-tree layout: extension module sits on PYTHONPATH
    from _bdpp import *  # noqa: F401,F403
    from _bdpp import __doc__ as _doc

__doc__ = _doc
