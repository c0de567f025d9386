"""Kernel selection for the exhaustive rainbow search.

The compiled extension is used when it imports; setting ``SDR_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
import os

from . import _search_py

try:
    if os.environ.get("SDR_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure python requested")
    from . import _search as _compiled
except ImportError:
    _compiled = None

if _compiled is not None:
    max_rainbow = _compiled.max_rainbow
    BACKEND = "cython"
else:
    max_rainbow = _search_py.max_rainbow
    BACKEND = "python"

DEFAULT_NODE_BUDGET = 10 ** 8


def default_budget() -> int:
    raw = os.environ.get("SDR_NODE_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def kernels():
    """Available kernels by name, for benchmarks and cross-checks."""
    out = {"python": _search_py.max_rainbow}
    if _compiled is not None:
        out["cython"] = _compiled.max_rainbow
    return out
