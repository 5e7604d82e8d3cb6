"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  ``use_backend`` switches explicitly (tests and the
benchmark run both).
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def backend_name():
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name):
    """Select ``"python"`` or ``"cython"``; returns the previously active name."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    prev = backend_name()
    _active = BACKENDS[name]
    return prev


def meet_labels(rows, size):
    return _active.meet_labels(rows, size)


def normalize(row):
    return _active.normalize(row)


def backtrack(s_rows, t_rows, order, cand_start, cand_flat, size):
    return _active.backtrack(s_rows, t_rows, order, cand_start, cand_flat, size)
