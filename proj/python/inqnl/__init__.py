"""Inquisitive modal logic over neighborhood models.

Thin re-export of the compiled extension; see the project README for the
formula grammar and the model JSON format.
"""

try:
    from ._inqnl import *  # noqa: F401,F403
    from ._inqnl import __doc__ as _doc
except ImportError:  # development layout: extension on PYTHONPATH
    from _inqnl import *  # noqa: F401,F403
    from _inqnl import __doc__ as _doc

__doc__ = _doc
