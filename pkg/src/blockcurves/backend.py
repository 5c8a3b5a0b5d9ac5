"""Kernel backend selection.

The hot kernels exist twice: `_fastcore` (Cython) and `_purecore`
(plain Python), with identical semantics.  The compiled module is used
when importable; set BLOCKCURVES_PURE=1 to force the fallback.  Both can
be loaded side by side for parity tests and benchmarks.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import gf

if os.environ.get("BLOCKCURVES_PURE"):
    from . import _purecore as impl
else:
    try:
        from . import _fastcore as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _purecore as impl  # type: ignore[no-redef]

name = impl.NAME


def load_pure():
    from . import _purecore

    return _purecore


def load_compiled():
    """The compiled backend, or None when the extension is absent."""
    try:
        from . import _fastcore
    except ImportError:
        return None
    return _fastcore


@lru_cache(maxsize=None)
def field_ctx(spec: gf.FieldSpec, module_name: str | None = None):
    """Kernel arithmetic context for a field (cached per backend)."""
    module = impl if module_name is None else (
        load_pure() if module_name == "pure" else load_compiled()
    )
    if module is None:
        raise RuntimeError("compiled backend requested but not built")
    add, mul, inv, neg = gf.tables(spec).np_tables()
    return module.make_field_ctx(spec.q, add, mul, inv, neg)
