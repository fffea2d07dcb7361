"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``CARAKIT_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("CARAKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback

slack_c = _impl.slack_c
slack_d = _impl.slack_d
rotation_worst = _impl.rotation_worst
leaf_contains = _impl.leaf_contains

__all__ = ["BACKEND", "slack_c", "slack_d", "rotation_worst", "leaf_contains"]
