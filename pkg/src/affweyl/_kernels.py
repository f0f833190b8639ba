"""Batched integer kernels for Cayley-graph enumeration.

Elements are stored in coweight coordinates as an integer matrix ``M``
(shape ``(F, r, r)``) and translation ``t`` (shape ``(F, r)``). Two
implementations are provided: numba ``@njit`` loops and plain numpy. The
numba path is used when numba imports and ``AFFWEYL_NUMBA`` is not set to
``0``; both must agree bit for bit.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("AFFWEYL_NUMBA", "1").strip().lower()

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - numba ships in the test env
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("0", "false", "no", "off")


# numpy reference path


def right_multiply_np(M, t, gm, gt):
    """Batch of ``w * s`` for a fixed generator ``s = (gm, gt)``."""
    return M @ gm, M @ gt + t


def lengths_np(M, t, pos, denom):
    """Number of walls separating the basepoint alcove from ``w`` of it.

    The basepoint is ``(1/denom) * sum(omega_i)``; ``pos`` holds positive
    roots in simple-root coordinates.
    """
    pts = M.sum(axis=2) + denom * t
    vals = pts @ pos.T
    return np.abs(np.floor_divide(vals, denom)).sum(axis=1)


# numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _right_multiply_nb(M, t, gm, gt):
        F, r, _ = M.shape
        outM = np.empty_like(M)
        outt = np.empty_like(t)
        for f in range(F):
            for i in range(r):
                acc_t = t[f, i]
                for k in range(r):
                    acc_t += M[f, i, k] * gt[k]
                outt[f, i] = acc_t
                for j in range(r):
                    acc = 0
                    for k in range(r):
                        acc += M[f, i, k] * gm[k, j]
                    outM[f, i, j] = acc
        return outM, outt

    @njit(cache=True)
    def _lengths_nb(M, t, pos, denom):
        F, r, _ = M.shape
        P = pos.shape[0]
        out = np.zeros(F, dtype=np.int64)
        pt = np.empty(r, dtype=np.int64)
        for f in range(F):
            for i in range(r):
                s = denom * t[f, i]
                for k in range(r):
                    s += M[f, i, k]
                pt[i] = s
            total = 0
            for a in range(P):
                v = 0
                for i in range(r):
                    v += pos[a, i] * pt[i]
                q = v // denom
                total += q if q >= 0 else -q
            out[f] = total
        return out

    def right_multiply_nb(M, t, gm, gt):
        return _right_multiply_nb(
            np.ascontiguousarray(M), np.ascontiguousarray(t), np.ascontiguousarray(gm), np.ascontiguousarray(gt)
        )

    def lengths_nb(M, t, pos, denom):
        return _lengths_nb(np.ascontiguousarray(M), np.ascontiguousarray(t), np.ascontiguousarray(pos), np.int64(denom))

else:  # pragma: no cover
    right_multiply_nb = right_multiply_np
    lengths_nb = lengths_np


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def right_multiply(M, t, gm, gt):
    if USE_NUMBA:
        return right_multiply_nb(M, t, gm, gt)
    return right_multiply_np(M, t, gm, gt)


def lengths(M, t, pos, denom):
    if USE_NUMBA:
        return lengths_nb(M, t, pos, denom)
    return lengths_np(M, t, pos, denom)
