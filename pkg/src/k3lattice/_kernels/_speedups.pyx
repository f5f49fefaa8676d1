# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pure``.

Same signatures and results.  Inputs outside the safe fixed-width range are
handed back to the pure implementation.
"""

from libc.math cimport sqrt, floor, ceil
from libc.stdlib cimport malloc, free

from . import _pure

cdef long long LIMIT = 1 << 24


cdef long long _gcd(long long a, long long b) nogil:
    while b:
        a, b = b, a % b
    return a if a >= 0 else -a


def short_vectors(a, long long bound):
    cdef int n = len(a)
    if n == 0:
        return []
    if n > 64 or bound > LIMIT or any(abs(v) > LIMIT for row in a for v in row):
        return _pure.short_vectors(a, bound)
    cdef double *q = <double *> malloc(n * n * sizeof(double))
    cdef long long *A = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    cdef long long *hi = <long long *> malloc(n * sizeof(long long))
    cdef double *room = <double *> malloc((n + 1) * sizeof(double))
    cdef double *ctr = <double *> malloc(n * sizeof(double))
    cdef int i, j, k, l
    cdef double c, r, t, slack
    cdef long long exact
    out = []
    try:
        for i in range(n):
            for j in range(n):
                A[i * n + j] = a[i][j]
                q[i * n + j] = <double> a[i][j]
        for i in range(n):
            if q[i * n + i] <= 0:
                raise ValueError("form is not positive definite")
            for j in range(i + 1, n):
                q[j * n + i] = q[i * n + j]
                q[i * n + j] = q[i * n + j] / q[i * n + i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k * n + l] -= q[k * n + i] * q[i * n + l]
            if q[i * n + i] <= 1e-9:
                raise ValueError("form is not positive definite")
        # Float bounds are widened by a margin; membership is decided exactly.
        slack = 1e-6 * (bound + 1)
        room[n] = bound + slack
        i = n - 1
        c = 0.0
        ctr[i] = 0.0
        r = sqrt(room[n] / q[i * n + i])
        x[i] = <long long> ceil(ctr[i] - r)
        hi[i] = <long long> floor(ctr[i] + r)
        while True:
            if x[i] > hi[i]:
                i += 1
                if i == n:
                    break
                x[i] += 1
                continue
            t = x[i] - ctr[i]
            room[i] = room[i + 1] - q[i * n + i] * t * t
            if room[i] < 0:
                x[i] += 1
                continue
            if i == 0:
                exact = 0
                for k in range(n):
                    if x[k]:
                        for l in range(n):
                            exact += x[k] * A[k * n + l] * x[l]
                if 0 < exact <= bound:
                    out.append(tuple([x[k] for k in range(n)]))
                x[i] += 1
                continue
            i -= 1
            c = 0.0
            for j in range(i + 1, n):
                c -= q[i * n + j] * x[j]
            ctr[i] = c
            r = sqrt(room[i + 1] / q[i * n + i])
            x[i] = <long long> ceil(c - r)
            hi[i] = <long long> floor(c + r)
    finally:
        free(q); free(A); free(x); free(hi); free(room); free(ctr)
    out.sort()
    return out


def value_histogram(orders, qnum, bnum, long long modulus):
    cdef int r = len(orders)
    if r > 64 or modulus > LIMIT or any(o > LIMIT for o in orders):
        return _pure.value_histogram(orders, qnum, bnum, modulus)
    cdef long long *o = <long long *> malloc(r * sizeof(long long))
    cdef long long *qv = <long long *> malloc(r * sizeof(long long))
    cdef long long *bv = <long long *> malloc(r * r * sizeof(long long))
    cdef long long *x = <long long *> malloc(r * sizeof(long long))
    cdef long long val, order, oi, xi
    cdef int i, j
    hist = {}
    try:
        for i in range(r):
            o[i] = orders[i]
            qv[i] = qnum[i] % modulus
            x[i] = 0
            for j in range(r):
                bv[i * r + j] = (2 * bnum[i][j]) % modulus
        while True:
            val = 0
            order = 1
            for i in range(r):
                xi = x[i]
                if xi == 0:
                    continue
                val = (val + (xi * xi % modulus) * qv[i]) % modulus
                for j in range(i + 1, r):
                    if x[j]:
                        val = (val + (xi * x[j] % modulus) * bv[i * r + j]) % modulus
                oi = o[i] // _gcd(xi, o[i])
                order = order // _gcd(order, oi) * oi
            key = (order, val)
            hist[key] = hist.get(key, 0) + 1
            i = 0
            while i < r:
                x[i] += 1
                if x[i] < o[i]:
                    break
                x[i] = 0
                i += 1
            if i == r:
                break
    finally:
        free(o); free(qv); free(bv); free(x)
    return hist
