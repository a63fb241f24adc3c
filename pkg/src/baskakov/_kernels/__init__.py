"""Kernel backend selection.

Importing this package picks the compiled extension when available and falls
back to the NumPy implementation otherwise.  Set BASKAKOV_KERNEL=compiled or
=python to force a backend (auto is the default); forcing an unavailable
backend raises ImportError rather than silently degrading.
"""

from __future__ import annotations

import os

_choice = os.environ.get("BASKAKOV_KERNEL", "auto").strip().lower() or "auto"
if _choice not in ("auto", "compiled", "python"):
    raise ImportError(
        f"BASKAKOV_KERNEL must be 'auto', 'compiled' or 'python'; got {_choice!r}"
    )

if _choice == "python":
    from . import fallback as _impl
else:
    try:
        from . import core as _impl  # compiled extension, may be absent
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "BASKAKOV_KERNEL=compiled but the compiled extension is not built"
            ) from None
        from . import fallback as _impl

BACKEND: str = _impl.BACKEND
basis_row = _impl.basis_row
qi_grid = _impl.qi_grid
ql_row = _impl.ql_row
lebesgue_grid = _impl.lebesgue_grid


def get_backend(name: str):
    """Explicit backend module ('python' or 'compiled'), for tests/benchmarks."""
    if name == "python":
        from . import fallback

        return fallback
    if name == "compiled":
        from . import core

        return core
    raise ValueError(f"unknown backend {name!r}")


__all__ = ["BACKEND", "basis_row", "qi_grid", "ql_row", "lebesgue_grid", "get_backend"]
