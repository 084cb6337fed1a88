"""Backend selection for the persistence pairing kernel.

The compiled Cython kernel is used when its extension module imported
successfully; otherwise the pure-Python twin takes over.  Setting the
environment variable ``HYPERPH_PURE_PYTHON=1`` forces the fallback, which
is also how the benchmark compares the two.
"""

from __future__ import annotations

import os

from . import _reduction_py

_BACKENDS = {"pure-python": _reduction_py}

try:
    from . import _reduction

    _BACKENDS["compiled"] = _reduction
except ImportError:
    _reduction = None

if os.environ.get("HYPERPH_PURE_PYTHON"):
    DEFAULT_BACKEND = "pure-python"
elif "compiled" in _BACKENDS:
    DEFAULT_BACKEND = "compiled"
else:
    DEFAULT_BACKEND = "pure-python"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def pair_simplices(dims, faces, n, backend: str | None = None):
    """Dispatch to the selected kernel; see _reduction_py.pair_simplices."""
    name = backend or DEFAULT_BACKEND
    try:
        impl = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        ) from None
    return impl.pair_simplices(dims, faces, n)
