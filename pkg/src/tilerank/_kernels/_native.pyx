# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Kendall tau-b and per-cell correlation grids.

Same contracts as `_fallback`.  tau-b uses Knight's O(n log n) scheme:
lexicographic merge sort of the pairs, then inversion counting on the
second key.  The grid kernel presorts samples by the target score once,
so each cell reduces to one counting merge when the target is tie-free.
"""

from libc.math cimport sqrt, isnan, NAN

import numpy as np

cimport numpy as cnp

cnp.import_array()

IMPL = "native"


cdef void _sort_pairs(double* x, double* y, double* bx, double* by,
                      Py_ssize_t n) noexcept nogil:
    """Stable bottom-up merge sort of (x, y) pairs by x, then y."""
    cdef double* sx = x
    cdef double* sy = y
    cdef double* dx = bx
    cdef double* dy = by
    cdef double* tmp
    cdef Py_ssize_t width = 1, lo, mid, hi, i, j, k
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if sx[i] < sx[j] or (sx[i] == sx[j] and sy[i] <= sy[j]):
                    dx[k] = sx[i]
                    dy[k] = sy[i]
                    i += 1
                else:
                    dx[k] = sx[j]
                    dy[k] = sy[j]
                    j += 1
                k += 1
            while i < mid:
                dx[k] = sx[i]
                dy[k] = sy[i]
                i += 1
                k += 1
            while j < hi:
                dx[k] = sx[j]
                dy[k] = sy[j]
                j += 1
                k += 1
            lo += 2 * width
        tmp = sx; sx = dx; dx = tmp
        tmp = sy; sy = dy; dy = tmp
        width *= 2
    if sx != x:
        for i in range(n):
            x[i] = sx[i]
            y[i] = sy[i]


cdef long long _sort_count(double* y, double* buf, Py_ssize_t n) noexcept nogil:
    """Sort y in place, counting strictly decreasing pairs (inversions)."""
    cdef double* src = y
    cdef double* dst = buf
    cdef double* tmp
    cdef Py_ssize_t width = 1, lo, mid, hi, i, j, k
    cdef long long inv = 0
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if src[i] <= src[j]:
                    dst[k] = src[i]
                    i += 1
                else:
                    inv += mid - i
                    dst[k] = src[j]
                    j += 1
                k += 1
            while i < mid:
                dst[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                dst[k] = src[j]
                j += 1
                k += 1
            lo += 2 * width
        tmp = src; src = dst; dst = tmp
        width *= 2
    if src != y:
        for i in range(n):
            y[i] = src[i]
    return inv


cdef double _tau_from_sorted(double* x, double* y, double* buf,
                             Py_ssize_t n, bint x_has_ties) noexcept nogil:
    """tau-b of pairs already sorted by (x, y); consumes y."""
    cdef Py_ssize_t i
    cdef long long n0, n1 = 0, n2 = 0, n3 = 0, tx = 1, txy = 1, ty = 1, dis
    cdef double denom, tau

    if n < 2:
        return NAN
    if x_has_ties:
        for i in range(1, n):
            if x[i] == x[i - 1]:
                tx += 1
                if y[i] == y[i - 1]:
                    txy += 1
                else:
                    n3 += txy * (txy - 1) // 2
                    txy = 1
            else:
                n1 += tx * (tx - 1) // 2
                n3 += txy * (txy - 1) // 2
                tx = 1
                txy = 1
        n1 += tx * (tx - 1) // 2
        n3 += txy * (txy - 1) // 2

    dis = _sort_count(y, buf, n)

    for i in range(1, n):
        if y[i] == y[i - 1]:
            ty += 1
        else:
            n2 += ty * (ty - 1) // 2
            ty = 1
    n2 += ty * (ty - 1) // 2

    n0 = (<long long> n) * (n - 1) // 2
    if n0 == n1 or n0 == n2:
        return NAN
    denom = sqrt((<double> (n0 - n1)) * (<double> (n0 - n2)))
    tau = ((<double> (n0 - n1 - n2 + n3)) - 2.0 * (<double> dis)) / denom
    if tau > 1.0:
        tau = 1.0
    elif tau < -1.0:
        tau = -1.0
    return tau


cdef double _tau_b(double* x, double* y, double* bx, double* by,
                   Py_ssize_t n) noexcept nogil:
    """tau-b of n finite pairs in arbitrary order (x and y are consumed)."""
    cdef Py_ssize_t i
    cdef bint ties = 0
    if n < 2:
        return NAN
    _sort_pairs(x, y, bx, by, n)
    for i in range(1, n):
        if x[i] == x[i - 1]:
            ties = 1
            break
    return _tau_from_sorted(x, y, bx, n, ties)


def kendall_tau_b(x, y):
    """Tie-adjusted Kendall tau-b of two equal-length finite arrays."""
    cdef cnp.ndarray[double, ndim=1] xa = np.array(x, dtype=np.float64, copy=True)
    cdef cnp.ndarray[double, ndim=1] ya = np.array(y, dtype=np.float64, copy=True)
    if xa.shape[0] != ya.shape[0]:
        raise ValueError("x and y must have equal length")
    cdef Py_ssize_t n = xa.shape[0]
    if n < 2:
        return float("nan")
    cdef cnp.ndarray[double, ndim=1] bx = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] by = np.empty(n, dtype=np.float64)
    cdef double out
    with nogil:
        out = _tau_b(&xa[0], &ya[0], &bx[0], &by[0], n)
    return float(out)


def tau_grid(target, tn, fp, fn, tp, avals, bvals):
    """Kendall tau-b between a target score and R_{a,b} per grid cell.

    Samples are reordered by the target once; a tie-free target then needs
    no per-cell pair sort, only the counting merge over the cell scores.
    """
    cdef cnp.ndarray[double, ndim=1] t0 = np.ascontiguousarray(target, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] av = np.ascontiguousarray(avals, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] bv = np.ascontiguousarray(bvals, dtype=np.float64)
    cdef Py_ssize_t na = av.shape[0], nb = bv.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.full((na, nb), np.nan)

    # ascending target order with NaNs compacted away
    order = np.argsort(t0, kind="stable")
    order = order[np.isfinite(t0[order])]
    cdef cnp.ndarray[double, ndim=1] ts = np.ascontiguousarray(t0[order])
    cdef cnp.ndarray[double, ndim=1] ctn = np.ascontiguousarray(
        np.asarray(tn, dtype=np.float64)[order])
    cdef cnp.ndarray[double, ndim=1] cfp = np.ascontiguousarray(
        np.asarray(fp, dtype=np.float64)[order])
    cdef cnp.ndarray[double, ndim=1] cfn = np.ascontiguousarray(
        np.asarray(fn, dtype=np.float64)[order])
    cdef cnp.ndarray[double, ndim=1] ctp = np.ascontiguousarray(
        np.asarray(tp, dtype=np.float64)[order])
    cdef Py_ssize_t n = ts.shape[0]
    if n < 2:
        return out
    cdef bint ties = bool(np.any(ts[1:] == ts[:-1]))

    cdef cnp.ndarray[double, ndim=1] xs = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ys = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] bx = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] by = np.empty(n, dtype=np.float64)

    cdef Py_ssize_t i, j, k, m
    cdef double a, b, one_a, one_b, num, den
    with nogil:
        for i in range(na):
            a = av[i]
            one_a = 1.0 - a
            for j in range(nb):
                b = bv[j]
                one_b = 1.0 - b
                m = 0
                for k in range(n):
                    num = one_a * ctn[k] + a * ctp[k]
                    den = num + one_b * cfp[k] + b * cfn[k]
                    if den == 0.0:
                        continue
                    xs[m] = ts[k]
                    ys[m] = num / den
                    m += 1
                if m < 2:
                    continue
                if ties:
                    # target order alone does not sort within-tie cell
                    # scores; fall back to the full pair sort
                    out[i, j] = _tau_b(&xs[0], &ys[0], &bx[0], &by[0], m)
                else:
                    out[i, j] = _tau_from_sorted(&xs[0], &ys[0], &bx[0], m, 0)
    return out
