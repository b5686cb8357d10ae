"""Pure-numpy kernels; reference path and fallback when numba is off."""

import math

import numpy as np

CHEBYSHEV, LEGENDRE, MONOMIAL = 0, 1, 2


def _fsum(values):
    # math.fsum keeps -0.0 on some Python versions; pin +0.0 for zero sums
    return math.fsum(values) + 0.0


def map_to_unit(x, a, b):
    """Affine map of ``[a, b]`` onto ``[-1, 1]``, exact when ``(a, b) = (-1, 1)``."""
    return (x - 0.5 * (a + b)) / (0.5 * (b - a))


def basis_matrix(t, family, degree_count):
    """Rows ``[Q_0(t), ..., Q_{d-1}(t)]`` for each mapped coordinate in ``t``."""
    t = np.asarray(t, dtype=np.float64)
    out = np.empty(t.shape + (degree_count,))
    out[..., 0] = 1.0
    if degree_count > 1:
        out[..., 1] = t
    for k in range(1, degree_count - 1):
        if family == CHEBYSHEV:
            out[..., k + 1] = 2.0 * t * out[..., k] - out[..., k - 1]
        elif family == LEGENDRE:
            kf = float(k)
            out[..., k + 1] = ((2.0 * kf + 1.0) * t * out[..., k]
                               - kf * out[..., k - 1]) / (kf + 1.0)
        else:
            out[..., k + 1] = t * out[..., k]
    return out


def bag_moment_sums(values, offsets, family, degree_count, a, b):
    """Correctly rounded per-bag sums of the basis; bag ``l`` is
    ``values[offsets[l]:offsets[l + 1]]``."""
    n_bags = len(offsets) - 1
    out = np.empty((n_bags, degree_count))
    for l in range(n_bags):
        chunk = values[offsets[l]:offsets[l + 1]]
        q = basis_matrix(map_to_unit(chunk, a, b), family, degree_count)
        for k in range(degree_count):
            out[l, k] = _fsum(q[:, k])
    return out


def accumulate_statistics(moments, labels):
    """Return ``(G, yG, Y)`` summed exactly over the rows of ``moments``."""
    d = moments.shape[1]
    gram = np.empty((d, d))
    ygram = np.empty((d, d))
    ymom = np.empty(d)
    for q in range(d):
        col_q = moments[:, q]
        weighted_q = labels * col_q
        ymom[q] = _fsum(weighted_q)
        for r in range(q, d):
            col_r = moments[:, r]
            gram[q, r] = gram[r, q] = _fsum(col_q * col_r)
            ygram[q, r] = ygram[r, q] = _fsum(weighted_q * col_r)
    return gram, ygram, ymom


def _off_norm(a):
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(matrix, tol, max_sweeps):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps, relative_off_norm)``;
    eigenvectors are columns, unsorted.  ``sweeps > max_sweeps`` signals
    non-convergence.
    """
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    scale = math.sqrt(float(np.sum(a * a)))
    if scale == 0.0 or n == 1:
        return np.diag(a).copy(), v, 0, 0.0
    sweep = 0
    off = _off_norm(a)
    while off > tol * scale:
        if sweep == max_sweeps:
            return np.diag(a).copy(), v, sweep + 1, off / scale
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
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        off = _off_norm(a)
    return np.diag(a).copy(), v, sweep, off / scale
