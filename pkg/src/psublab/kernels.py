"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``PSUBLAB_PURE=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("PSUBLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py


def use_backend(name):
    """Switch the active backend ("cython" or "python"); used by the benchmark."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _kernels_py, "python"
    elif name == "cython":
        from . import _kernels

        _impl, BACKEND = _kernels, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")


def closure_mask(table, mask, gens, limit):
    return _impl.closure_mask(table, mask, np.ascontiguousarray(gens, dtype=np.int32), limit)


def join_many(table, base, gens, extra, limit):
    return _impl.join_many(
        table,
        base,
        np.ascontiguousarray(gens, dtype=np.int32),
        np.ascontiguousarray(extra, dtype=np.int32),
        limit,
    )
