"""Selects the compiled evaluation kernels, falling back to pure Python.

Set BARNESG_PURE_KERNELS=1 to force the fallback (benchmarks, debugging).
"""

from __future__ import annotations

import os

if os.environ.get("BARNESG_PURE_KERNELS") == "1":
    from . import _purekernels as impl
else:
    try:
        from . import _fastkernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purekernels as impl

COMPILED: bool = impl.COMPILED

transform = impl.transform
transform_deriv = impl.transform_deriv
lngamma_halfplane = impl.lngamma_halfplane
lng_halfplane = impl.lng_halfplane
li2 = impl.li2


def backend_name() -> str:
    return "compiled" if COMPILED else "pure"
