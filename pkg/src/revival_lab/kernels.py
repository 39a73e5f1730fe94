"""Kernel dispatch.

The compiled Cython extension is used when it was built and imports
cleanly; otherwise the NumPy fallback is used. Setting the environment
variable ``REVIVAL_LAB_PURE_PYTHON=1`` forces the fallback.
"""
import os

from revival_lab import _pykernels

if os.environ.get("REVIVAL_LAB_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from revival_lab import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

hermite_scaled = _impl.hermite_scaled
revival_probability = _impl.revival_probability

__all__ = ["BACKEND", "hermite_scaled", "revival_probability"]
