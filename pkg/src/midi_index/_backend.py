"""Kernel backend selection.

The numba kernels are used by default. Setting ``MIDI_INDEX_NO_NUMBA=1``
(or running without numba installed) selects the pure-numpy fallback.
"""

import os
from contextlib import contextmanager

from . import _kernels_numpy

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _kernels_numba = None

ENV_FLAG = "MIDI_INDEX_NO_NUMBA"

_BACKENDS = {"numpy": _kernels_numpy}
if _kernels_numba is not None:
    _BACKENDS["numba"] = _kernels_numba


def _flag_set(value):
    return value.strip().lower() not in ("", "0", "false", "no")


def _default_name():
    if _kernels_numba is None or _flag_set(os.environ.get(ENV_FLAG, "")):
        return "numpy"
    return "numba"


_active = _default_name()


def available():
    return sorted(_BACKENDS)


def name():
    return _active


def kernels():
    return _BACKENDS[_active]


@contextmanager
def use(backend):
    """Temporarily switch the process-wide backend (not thread safe)."""
    global _active
    if backend not in _BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; available: {available()}")
    previous, _active = _active, backend
    try:
        yield _BACKENDS[backend]
    finally:
        _active = previous
