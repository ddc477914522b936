"""Gate-kernel backend selection.

The compiled extension is preferred when it imports; otherwise the
pure-NumPy fallback is used. The ``QVBENCH_BACKEND`` environment variable
(``compiled`` or ``numpy``) pins the choice at import time, and
:func:`set_backend` switches it at runtime (mainly for tests and
benchmarks).
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_BACKENDS = {"numpy": _kernels_py}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled


def available_backends():
    return sorted(_BACKENDS)


def _initial_backend():
    name = os.environ.get("QVBENCH_BACKEND")
    if name is None:
        return "compiled" if "compiled" in _BACKENDS else "numpy"
    if name not in _BACKENDS:
        raise ValueError(
            f"QVBENCH_BACKEND={name!r} not available; choose from {available_backends()}"
        )
    return name


_active = _initial_backend()


def get_backend():
    return _active


def set_backend(name):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {available_backends()}")
    _active = name


def kernels(name=None):
    """Return the active kernel module (or a specific one by name)."""
    return _BACKENDS[_active if name is None else name]
