"""Linear algebra over GF(2).

The elimination kernel comes from the compiled ``_gf2_ext`` module when it
was built, otherwise from the numpy fallback in ``_gf2_py``.  Set
``FOLDWEB_PURE=1`` to force the fallback.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np

from . import _gf2_py

try:
    if os.environ.get("FOLDWEB_PURE"):
        raise ImportError("fallback forced by FOLDWEB_PURE")
    from . import _gf2_ext as _kernel

    BACKEND = "cython"
except ImportError:
    _kernel = _gf2_py
    BACKEND = "python"

KERNELS = {"python": _gf2_py.rref_inplace}
if BACKEND == "cython":
    KERNELS["cython"] = _kernel.rref_inplace


def _as_bits(m) -> np.ndarray:
    a = np.array(m, dtype=np.uint8, copy=True, ndmin=2)
    a &= 1
    return np.ascontiguousarray(a)


def rref(m, ncols: Optional[int] = None, backend: Optional[str] = None):
    """Reduced row-echelon form of ``m`` over GF(2).

    Only the first ``ncols`` columns are eligible as pivots (default: all),
    which lets callers reduce an augmented matrix without pivoting on the
    right-hand side.

    Returns ``(reduced, rank, pivots)``.
    """
    a = _as_bits(m)
    if ncols is None:
        ncols = a.shape[1]
    kernel = KERNELS[backend] if backend else _kernel.rref_inplace
    pivots = list(kernel(a, ncols))
    return a, len(pivots), pivots


def rank(m) -> int:
    return rref(m)[1]


def solve(a, b) -> Optional[np.ndarray]:
    """One solution of ``a @ x = b`` (mod 2) with free variables set to 0.

    Returns None when the system is inconsistent.
    """
    a = _as_bits(a)
    b = np.asarray(b, dtype=np.uint8).reshape(-1, 1) & 1
    if a.shape[0] != b.shape[0]:
        raise ValueError("row count mismatch")
    n = a.shape[1]
    red, r, pivots = rref(np.hstack([a, b]), ncols=n)
    if r < red.shape[0] and red[r:, n].any():
        return None
    x = np.zeros(n, dtype=np.uint8)
    for i, c in enumerate(pivots):
        x[c] = red[i, n]
    return x


def nullspace(a) -> np.ndarray:
    """Basis of ``{x : a @ x = 0}`` as rows, itself in reduced echelon form.

    Rows are ordered by ascending pivot column, so the basis is canonical
    for the solution space.
    """
    a = _as_bits(a)
    n = a.shape[1]
    red, r, pivots = rref(a)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = red[i, f]
    if len(free) == 0:
        return basis
    red_basis, _, _ = rref(basis)
    return red_basis


def in_rowspace(v, rows) -> bool:
    rows = _as_bits(rows)
    return solve(rows.T, np.asarray(v).reshape(-1)) is not None
