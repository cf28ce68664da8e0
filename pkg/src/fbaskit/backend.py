"""Backend selection for the hot kernels.

FBASKIT_BACKEND controls which implementation serves sampling and the QIP
search:

  - "auto" (default): numba if it imports, else the pure-Python fallback
  - "numba": require the jitted kernels (ImportError if numba is absent)
  - "python": force the pure-Python fallback

Both backends are bit-compatible; the benchmark in benchmarks/ compares
their throughput.
"""

from __future__ import annotations

import os


def _load():
    choice = os.environ.get("FBASKIT_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "numba", "python"):
        raise ValueError(f"FBASKIT_BACKEND must be auto|numba|python, got {choice!r}")
    if choice in ("auto", "numba"):
        try:
            from . import _nbkernels

            return _nbkernels
        except ImportError:
            if choice == "numba":
                raise
    from . import _pykernels

    return _pykernels


kernels = _load()


def backend_name() -> str:
    return kernels.NAME
