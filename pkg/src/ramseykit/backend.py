"""Kernel backend selection.

The hot enumeration kernels exist twice: an ``@njit`` implementation and a
vectorized pure-numpy fallback. ``RAMSEY_BACKEND=numpy`` (or ``numba``)
forces one; by default numba is used when it imports, numpy otherwise.
"""

from __future__ import annotations

import os

BACKENDS = ("numba", "numpy")

_forced: str | None = None
_numba_ok: bool | None = None


def numba_available() -> bool:
    global _numba_ok
    if _numba_ok is None:
        try:
            import numba  # noqa: F401

            _numba_ok = True
        except ImportError:
            _numba_ok = False
    return _numba_ok


def backend() -> str:
    """Resolve the active backend name."""
    if _forced is not None:
        return _forced
    env = os.environ.get("RAMSEY_BACKEND", "").strip().lower()
    if env:
        if env not in BACKENDS:
            raise ValueError(f"RAMSEY_BACKEND must be one of {BACKENDS}, got {env!r}")
        if env == "numba" and not numba_available():
            raise RuntimeError("RAMSEY_BACKEND=numba but numba is not importable")
        return env
    return "numba" if numba_available() else "numpy"


def force_backend(name: str | None) -> None:
    """Override the backend programmatically (tests and benchmarks)."""
    global _forced
    if name is not None and name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    _forced = name
