"""Compiled kernels for the hot loops. Each has a numpy twin in the caller."""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None


def _block_reflect(x, hi, b, lo):
    # x viewed as (hi, b, lo); reflect every length-b column about its mean.
    scale = 2.0 / b
    if lo == 1:
        for h in range(hi):
            base = h * b
            s = 0.0
            for j in range(b):
                s += x[base + j]
            s *= scale
            for j in range(b):
                x[base + j] = s - x[base + j]
        return
    acc = np.empty(lo)
    for h in range(hi):
        base = h * b * lo
        for k in range(lo):
            acc[k] = 0.0
        for j in range(b):
            row = base + j * lo
            for k in range(lo):
                acc[k] += x[row + k]
        for k in range(lo):
            acc[k] *= scale
        for j in range(b):
            row = base + j * lo
            for k in range(lo):
                x[row + k] = acc[k] - x[row + k]


if njit is not None:
    block_reflect = njit(cache=True, nogil=True)(_block_reflect)
else:
    block_reflect = None
