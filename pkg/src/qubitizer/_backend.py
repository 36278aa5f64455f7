"""Kernel selection: the compiled extension when importable, numpy fallback otherwise.

Set ``QUBITIZER_BACKEND=python`` to force the fallback.
"""

import os

from . import _pykernels

python_kernels = _pykernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if os.environ.get("QUBITIZER_BACKEND", "").lower() == "python" or compiled_kernels is None:
    kernels = _pykernels
else:
    kernels = compiled_kernels

BACKEND = kernels.NAME


def available():
    """Names -> kernel modules for every importable backend."""
    out = {"python": _pykernels}
    if compiled_kernels is not None:
        out["cython"] = compiled_kernels
    return out
