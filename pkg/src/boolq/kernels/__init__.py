"""Hot brute-force kernels with backend selection at import.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module provides identical results. Setting the
environment variable ``BOOLQ_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

python_backend = _pykernels

if os.environ.get("BOOLQ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

mobius = _impl.mobius
packing_table = _impl.packing_table
bs_profile = _impl.bs_profile
dt_depth = _impl.dt_depth
alg_a_profile = _impl.alg_a_profile
lemma1_scan = _impl.lemma1_scan


def compiled_backend():
    """Return the compiled module, or None if it is not built."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


__all__ = [
    "BACKEND", "mobius", "packing_table", "bs_profile", "dt_depth",
    "alg_a_profile", "lemma1_scan", "python_backend", "compiled_backend",
]
