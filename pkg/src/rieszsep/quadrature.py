"""Gauss-Legendre quadrature helpers (fixed-order and globally adaptive)."""

import heapq
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=32)
def _nodes(n):
    x, w = leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(f, lo, hi, n=256):
    """Integrate a vectorized ``f`` over ``[lo, hi]`` with an ``n``-point rule."""
    x, w = _nodes(n)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * float(np.dot(w, f(mid + half * x)))


def adaptive_gauss_legendre(f, lo, hi, rtol=1e-13, atol=0.0, order=20,
                            max_intervals=4000):
    """Globally adaptive Gauss-Legendre integration.

    Each panel is scored by the difference between the ``order``-point rule
    on the panel and the same rule on its two halves; the worst panel is
    bisected until the summed estimate meets ``max(atol, rtol*|I|)``.

    Returns
    -------
    value, abs_error_estimate : float, float
    """

    def rule(a, b):
        return gauss_legendre(f, a, b, order)

    def panel(a, b, coarse):
        m = 0.5 * (a + b)
        left, right = rule(a, m), rule(m, b)
        fine = left + right
        return (-abs(fine - coarse), a, b, fine, left, right)

    heap = [panel(lo, hi, rule(lo, hi))]
    while True:
        total = sum(p[3] for p in heap)
        err = -sum(p[0] for p in heap)
        if err <= max(atol, rtol * abs(total)) or len(heap) >= max_intervals:
            break
        _, a, b, _, left, right = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not (a < m < b):
            # panel at machine resolution; keep it and stop refining
            heapq.heappush(heap, (0.0, a, b, left + right, left, right))
            continue
        heapq.heappush(heap, panel(a, m, left))
        heapq.heappush(heap, panel(m, b, right))
    # rounding in the panel sums sets a floor on what the estimate can claim
    floor = 4 * np.finfo(float).eps * sum(abs(p[3]) for p in heap)
    return total, err + floor
