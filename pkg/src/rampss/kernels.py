"""Backend selection for the elimination kernels.

The compiled extension (rampss._gfkernels) is used when it imported cleanly;
otherwise the pure-Python twin takes over.  Set RAMPSS_PURE_PYTHON=1 to force
the fallback, e.g. to run the benchmark comparison or debug the kernels.
"""

import os

if os.environ.get("RAMPSS_PURE_PYTHON"):
    from . import _gfkernels_py as _impl
else:
    try:
        from . import _gfkernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _gfkernels_py as _impl

BACKEND = _impl.BACKEND

inv_mod = _impl.inv_mod
rref_mod = _impl.rref_mod
rank_mod = _impl.rank_mod
mul_mod = _impl.mul_mod
rank_sweep = _impl.rank_sweep
min_weight_mod = _impl.min_weight_mod


def load_backend(name):
    """Return the named kernel module ("cython" or "python"); None if absent."""
    if name == "python":
        from . import _gfkernels_py

        return _gfkernels_py
    if name == "cython":
        try:
            from . import _gfkernels  # type: ignore[attr-defined]
        except ImportError:
            return None
        return _gfkernels
    raise ValueError(f"unknown backend {name!r}")
