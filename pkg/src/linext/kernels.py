"""Kernel backend selection.

The compiled Cython module is used when it imports and the problem fits its
word-size limits; otherwise the pure-Python implementation runs. Setting
``LINEXT_PURE_PYTHON=1`` forces the fallback for the whole process.
"""
import os

from linext import _pykernels

_compiled = None
if not os.environ.get("LINEXT_PURE_PYTHON"):
    try:
        from linext import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _pick(n, m=0, backend=None):
    if backend == "python" or _compiled is None:
        return _pykernels
    if backend not in (None, "cython"):
        raise ValueError(f"unknown backend {backend!r}")
    if n <= _compiled.MAX_N and m <= _compiled.MAX_M:
        return _compiled
    if backend == "cython":
        raise ValueError(f"problem too large for compiled kernel (n={n}, m={m})")
    return _pykernels


def linext_count(n, pred, backend=None):
    return _pick(n, backend=backend).linext_count(n, list(pred))


def scan_orientations(n, eu, ev, with_counts=False, top_bits=0, top_value=0, backend=None):
    impl = _pick(n, len(eu), backend)
    return impl.scan_orientations(n, list(eu), list(ev), with_counts, top_bits, top_value)


def acyclic_count(n, adj, backend=None):
    impl = _pick(n, backend=backend)
    if impl is _compiled and n > 16:
        impl = _pykernels
    return impl.acyclic_count(n, list(adj))


def frank_wolfe_entropy(S, tol, max_iter, backend=None):
    """``(a, gap, iterations)`` for the entropy program over the rows of a 0/1 matrix."""
    import numpy as np

    S = np.ascontiguousarray(S, dtype=np.uint8)
    impl = _pick(0, backend=backend)
    return impl.frank_wolfe_entropy(S, float(tol), int(max_iter))
