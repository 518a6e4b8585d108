"""Backend switch for the numeric kernels.

Every hot loop in the package exists twice: a numba ``@njit`` version and a
vectorized numpy version. ``POSSIM_NUMBA=0`` in the environment starts the
process on the numpy path; :func:`set_backend` flips it at runtime.
"""
from __future__ import annotations

import contextlib
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_FALSY = {"0", "false", "no", "off"}

_backend = "numba" if HAVE_NUMBA and os.environ.get("POSSIM_NUMBA", "1").lower() not in _FALSY else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` with ``cache`` and ``nogil`` on; identity decorator without numba."""
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn
    return numba.njit(*args, **kwargs)


def backend() -> str:
    return _backend


def use_numba() -> bool:
    return _backend == "numba"


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _backend = name


@contextlib.contextmanager
def using(name: str):
    prev = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)
