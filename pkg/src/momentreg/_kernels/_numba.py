"""numba-compiled kernels.  Same arithmetic order as ``_numpy``."""

import math

import numpy as np
from numba import njit

from ._numpy import CHEBYSHEV, LEGENDRE, map_to_unit  # noqa: F401

_jit = njit(cache=True, nogil=True, error_model="numpy", fastmath=False)

# Shewchuk partials of a double-precision sum never exceed ~40 entries.
_MAX_PARTIALS = 64


@_jit
def _grow(partials, n, x):
    i = 0
    for j in range(n):
        y = partials[j]
        if abs(x) < abs(y):
            x, y = y, x
        hi = x + y
        lo = y - (hi - x)
        if lo != 0.0:
            partials[i] = lo
            i += 1
        x = hi
    partials[i] = x
    return i + 1


@_jit
def _finish(partials, n):
    # Round-half-even correction as in CPython's math.fsum.
    if n == 0:
        return 0.0
    n -= 1
    hi = partials[n]
    lo = 0.0
    while n > 0:
        x = hi
        n -= 1
        y = partials[n]
        hi = x + y
        yr = hi - x
        lo = y - yr
        if lo != 0.0:
            break
    if n > 0 and ((lo < 0.0 and partials[n - 1] < 0.0)
                  or (lo > 0.0 and partials[n - 1] > 0.0)):
        y = lo * 2.0
        x = hi + y
        yr = x - hi
        if y == yr:
            hi = x
    # zero sums come out as +0.0 whatever the signs of the terms
    return hi + 0.0


@_jit
def exact_sum(values):
    partials = np.empty(_MAX_PARTIALS)
    n = 0
    for x in values:
        n = _grow(partials, n, x)
    return _finish(partials, n)


@_jit
def _fill_row(t, family, degree_count, out):
    out[0] = 1.0
    if degree_count > 1:
        out[1] = t
    for k in range(1, degree_count - 1):
        if family == CHEBYSHEV:
            out[k + 1] = 2.0 * t * out[k] - out[k - 1]
        elif family == LEGENDRE:
            kf = float(k)
            out[k + 1] = ((2.0 * kf + 1.0) * t * out[k]
                          - kf * out[k - 1]) / (kf + 1.0)
        else:
            out[k + 1] = t * out[k]


@_jit
def basis_matrix(t, family, degree_count):
    out = np.empty((t.shape[0], degree_count))
    for i in range(t.shape[0]):
        _fill_row(t[i], family, degree_count, out[i])
    return out


@_jit
def bag_moment_sums(values, offsets, family, degree_count, a, b):
    n_bags = offsets.shape[0] - 1
    out = np.empty((n_bags, degree_count))
    row = np.empty(degree_count)
    partials = np.empty((degree_count, _MAX_PARTIALS))
    counts = np.zeros(degree_count, dtype=np.int64)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    for l in range(n_bags):
        counts[:] = 0
        for j in range(offsets[l], offsets[l + 1]):
            t = (values[j] - mid) / half
            _fill_row(t, family, degree_count, row)
            for k in range(degree_count):
                counts[k] = _grow(partials[k], counts[k], row[k])
        for k in range(degree_count):
            out[l, k] = _finish(partials[k], counts[k])
    return out


@_jit
def accumulate_statistics(moments, labels):
    n_bags, d = moments.shape
    gram = np.empty((d, d))
    ygram = np.empty((d, d))
    ymom = np.empty(d)
    pg = np.empty(_MAX_PARTIALS)
    py = np.empty(_MAX_PARTIALS)
    for q in range(d):
        ng = 0
        for l in range(n_bags):
            ng = _grow(pg, ng, labels[l] * moments[l, q])
        ymom[q] = _finish(pg, ng)
        for r in range(q, d):
            ng = 0
            ny = 0
            for l in range(n_bags):
                ng = _grow(pg, ng, moments[l, q] * moments[l, r])
                ny = _grow(py, ny, labels[l] * moments[l, q] * moments[l, r])
            gram[q, r] = _finish(pg, ng)
            gram[r, q] = gram[q, r]
            ygram[q, r] = _finish(py, ny)
            ygram[r, q] = ygram[q, r]
    return gram, ygram, ymom


@_jit
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            acc += a[i, j] * a[i, j]
    return math.sqrt(2.0 * acc)


@_jit
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n)
    scale = math.sqrt(np.sum(a * a))
    if scale == 0.0 or n == 1:
        return v, 0, 0.0
    sweep = 0
    off = _off_norm(a)
    while off > tol * scale:
        if sweep == max_sweeps:
            return v, sweep + 1, off / scale
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
        off = _off_norm(a)
    return v, sweep, off / scale


def jacobi_eigh(matrix, tol, max_sweeps):
    a = np.array(matrix, dtype=np.float64)
    v, sweeps, off = _jacobi(a, tol, max_sweeps)
    return np.diag(a).copy(), v, sweeps, off
