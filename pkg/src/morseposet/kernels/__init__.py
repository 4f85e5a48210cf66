"""Hot loops of the package, with a numba backend and a pure-numpy fallback.

The backend is chosen once at import from the ``MORSEPOSET_BACKEND``
environment variable (``numba`` or ``numpy``).  When unset, numba is used if it
imports.  Every public kernel also accepts ``backend=`` to override per call.
"""
import os

import numpy as np

from . import _numpy
from ._common import ACTIVE, DEGENERATE, INACTIVE, INDETERMINATE, subset_table

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    _numba = None

BACKENDS = ("numba", "numpy") if _numba is not None else ("numpy",)


def _default_backend():
    requested = os.environ.get("MORSEPOSET_BACKEND", "").strip().lower()
    if requested in ("", "auto"):
        return BACKENDS[0]
    if requested not in ("numba", "numpy"):
        raise ValueError(f"MORSEPOSET_BACKEND must be 'numba' or 'numpy', got {requested!r}")
    if requested == "numba" and _numba is None:
        raise ImportError("MORSEPOSET_BACKEND=numba but numba is not importable")
    return requested


BACKEND = _default_backend()


def subset_status(points, eps_rel, backend=None):
    """Classify every subset of size 1..n+1 of each configuration in a batch.

    Parameters
    ----------
    points : (B, N, n) array_like
        A batch of B configurations of N points in R^n.
    eps_rel : float
        Relative tolerance. Barycentric coefficients within ``eps_rel`` of zero and
        distances within ``eps_rel * diameter`` of a circumradius are indeterminate.

    Returns
    -------
    status : (B, S) int8
        One of ``INACTIVE``, ``ACTIVE``, ``INDETERMINATE``, ``DEGENERATE`` per subset,
        subsets ordered as in ``subset_table(N, n)``.
    radius : (B, S) float64
        Circumradius of each subset (0 for singletons and degenerate subsets).
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 3:
        raise ValueError("points must have shape (B, N, n)")
    members, sizes, _ = subset_table(points.shape[1], points.shape[2])
    backend = backend or BACKEND
    if backend == "numba":
        if _numba is None:
            raise ImportError("numba backend requested but numba is not importable")
        return _numba.subset_status(points, members, sizes, float(eps_rel))
    if backend == "numpy":
        return _numpy.subset_status(points, members, sizes, float(eps_rel))
    raise ValueError(f"unknown backend {backend!r}")


__all__ = [
    "ACTIVE",
    "BACKEND",
    "BACKENDS",
    "DEGENERATE",
    "INACTIVE",
    "INDETERMINATE",
    "subset_status",
    "subset_table",
]
