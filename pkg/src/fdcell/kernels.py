"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``FDCELL_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the numpy/pure-Python versions are used. Both expose the same
functions with identical results.
"""

import os

from . import _kernels_py

__all__ = ["BACKEND", "lp2_max", "monomials", "backends"]


def _load_compiled():
    if os.environ.get("FDCELL_PURE_PYTHON", "0") not in ("", "0"):
        return None
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()

if _compiled is not None:
    BACKEND = "cython"
    lp2_max = _compiled.lp2_max
    monomials = _compiled.monomials
else:
    BACKEND = "python"
    lp2_max = _kernels_py.lp2_max
    monomials = _kernels_py.monomials


def backends():
    """Mapping of every importable backend name to its module."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
