"""Kernel selection: the compiled extension when present, else pure Python.

Set ``ORIENTCORR_PURE=1`` to force the fallback (tests use it to check that
both give identical results).
"""

from __future__ import annotations

import os

from . import _purekernels

COMPILED = False
_impl = _purekernels
if os.environ.get("ORIENTCORR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _purekernels

BACKEND_NAME = "compiled" if COMPILED else "python"

oracle_counts = _impl.oracle_counts
annealed_counts = _impl.annealed_counts
quenched_counts = _impl.quenched_counts
gnp_mod = _impl.gnp_mod
reaches_masks = _impl.reaches_masks

__all__ = [
    "COMPILED",
    "BACKEND_NAME",
    "oracle_counts",
    "annealed_counts",
    "quenched_counts",
    "gnp_mod",
    "reaches_masks",
]
