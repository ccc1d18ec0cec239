# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernel lane. Mirrors conespan._kernels.pure expression for
expression so both lanes produce bit-identical doubles."""

from array import array

from libc.math cimport INFINITY, atan2


def cone_of(double dx, double dy, int k, double theta, double two_pi):
    cdef double ang = atan2(dy, dx)
    if ang < 0.0:
        ang += two_pi
    cdef long long idx = <long long>(ang / theta)
    if idx >= k:
        idx = k - 1
    return idx


def pairs_in_range(double[::1] xs, double[::1] ys, double r2):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j
    cdef double xi, yi, dx, dy
    out = []
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, n):
            dx = xs[j] - xi
            dy = ys[j] - yi
            if dx * dx + dy * dy <= r2:
                out.append((i, j))
    return out


def yao_select(
    double[::1] xs,
    double[::1] ys,
    long long[::1] ids,
    long long[::1] indptr,
    long long[::1] indices,
    int k,
    double theta,
    double two_pi,
):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, p
    cdef long long j, b, c
    cdef double xi, yi, dx, dy, ang, d2
    best_j_buf = array("q", [-1]) * k
    best_d2_buf = array("d", [0.0]) * k
    cdef long long[::1] best_j = best_j_buf
    cdef double[::1] best_d2 = best_d2_buf
    out = []
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for c in range(k):
            best_j[c] = -1
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            dx = xs[j] - xi
            dy = ys[j] - yi
            ang = atan2(dy, dx)
            if ang < 0.0:
                ang += two_pi
            c = <long long>(ang / theta)
            if c >= k:
                c = k - 1
            d2 = dx * dx + dy * dy
            b = best_j[c]
            if b < 0 or d2 < best_d2[c] or (d2 == best_d2[c] and ids[j] < ids[b]):
                best_j[c] = j
                best_d2[c] = d2
        for c in range(k):
            if best_j[c] >= 0:
                out.append((i, <Py_ssize_t>best_j[c]))
    return out


def floyd_warshall(double[::1] dist, Py_ssize_t n):
    cdef Py_ssize_t m, i, j, base, row
    cdef double dim, alt
    for m in range(n):
        base = m * n
        for i in range(n):
            dim = dist[i * n + m]
            if dim == INFINITY:
                continue
            row = i * n
            for j in range(n):
                alt = dim + dist[base + j]
                if alt < dist[row + j]:
                    dist[row + j] = alt
