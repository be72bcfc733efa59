"""Kernel backend selection.

At import time we try the compiled extension ``hodgelab._fast`` and fall
back to the pure-Python twins in ``hodgelab._kernels``.  Both expose the
same functions with the same exact-output contract, so swapping them can
never change a result, only the wall clock.  ``HODGELAB_PURE=1`` forces
the pure backend (used by the benchmark to measure both sides).
"""

import os

from . import _kernels as _pure

if os.environ.get("HODGELAB_PURE"):
    _impl = _pure
    COMPILED = False
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        _impl = _pure
        COMPILED = False

rref_frac = _impl.rref_frac
rank_int = _impl.rank_int
bareiss_minors_int = _impl.bareiss_minors_int
is_pd_int = _impl.is_pd_int
signature_frac = _impl.signature_frac
matmul_int = _impl.matmul_int
gram_int = _impl.gram_int
shifted_matrix_int = _impl.shifted_matrix_int

pure = _pure


def backend_name() -> str:
    return "compiled" if COMPILED else "pure-python"
