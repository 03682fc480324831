"""Vectorized golden-section minimization over aligned bracket arrays."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray,
               hi: np.ndarray, tol: float) -> np.ndarray:
    """Elementwise minimum of f over the brackets [lo[i], hi[i]].

    f maps an array of abscissae to function values elementwise.  The
    iteration count is fixed up front from the widest bracket and the
    tolerance, so for equal-width brackets (the only way this is called)
    the work done per bracket is independent of how brackets are batched.
    Exact on unimodal restrictions; endpoints are the caller's concern.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.size == 0:
        return np.empty(0, dtype=float)
    width = float(np.max(hi - lo))
    if width <= tol or tol <= 0.0:
        return f(0.5 * (lo + hi))
    iterations = max(1, math.ceil(math.log(width / tol) / math.log(1.0 / _INVPHI)))
    a = lo.copy()
    b = hi.copy()
    span = b - a
    c = b - _INVPHI * span
    d = a + _INVPHI * span
    fc = f(c)
    fd = f(d)
    for _ in range(iterations):
        keep_left = fc < fd
        b = np.where(keep_left, d, b)
        a = np.where(keep_left, a, c)
        span = b - a
        c = b - _INVPHI * span
        d = a + _INVPHI * span
        fc = f(c)
        fd = f(d)
    return np.minimum(fc, fd)
