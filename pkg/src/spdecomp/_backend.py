"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``SPDECOMP_PURE=1`` to force the numpy fallback.
"""

import os

from . import _fallback

if os.environ.get("SPDECOMP_PURE", "") not in ("", "0"):
    _impl = _fallback
    COMPILED = False
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _fallback
        COMPILED = False
    else:
        COMPILED = True

fwht = _impl.fwht
traces_fast = _impl.traces_fast
traces_naive = _impl.traces_naive
signed_perm_dense = _impl.signed_perm_dense
weighted_signed_sum = _impl.weighted_signed_sum


def available_backends():
    """Map of backend name to kernel module, for benchmarks and tests."""
    found = {"numpy": _fallback}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["compiled"] = _kernels
    return found
