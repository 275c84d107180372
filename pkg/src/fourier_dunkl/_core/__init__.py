"""Backend selection for the hot special-function kernels.

The compiled Cython extension is used when it importable; otherwise the
pure-numpy reference implementation takes over.  Setting the environment
variable ``FOURIER_DUNKL_PURE=1`` forces the fallback (the benchmark uses
this to compare both paths).
"""

import os

from . import pure as _pure

try:
    from . import _speedups as _fast
except ImportError:
    _fast = None

if _fast is None or os.environ.get("FOURIER_DUNKL_PURE"):
    _impl = _pure
else:
    _impl = _fast

BACKEND = _impl.BACKEND
Z_CAP = _impl.Z_CAP
gamma = _impl.gamma
jn_even = _impl.jn_even
jn_even_array = _impl.jn_even_array


def available_backends():
    """Importable backend modules keyed by name (for benchmarks/tests)."""
    found = {"pure": _pure}
    if _fast is not None:
        found["cython"] = _fast
    return found
