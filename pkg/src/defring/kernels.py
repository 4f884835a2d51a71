"""Kernel selection: the compiled extension when importable, else the pure-Python fallback.

Set ``DEFRING_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("DEFRING_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION

mono_mul = _impl.mono_mul
mono_div = _impl.mono_div
mono_divides = _impl.mono_divides
mono_lcm = _impl.mono_lcm
mono_coprime = _impl.mono_coprime
find_reducer = _impl.find_reducer
sub_mul = _impl.sub_mul
count_standard = _impl.count_standard

__all__ = [
    "IMPLEMENTATION",
    "mono_mul",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_coprime",
    "find_reducer",
    "sub_mul",
    "count_standard",
]
