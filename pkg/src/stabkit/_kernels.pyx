# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer search kernels (see _kernels_py for the reference)."""

from libc.stdlib cimport malloc, free, realloc


def pick_candidates(long long a, long long b):
    cdef long long n2 = a * a + b * b
    cdef long long r = 0
    while (r + 1) * (r + 1) <= n2:
        r += 1
    cdef long long c, d, num, e, f, dlo, dhi
    out = []
    for c in range(-r, r + 1):
        if a != 0:
            num = c * b - 1
            if num % a != 0:
                continue
            dlo = num // a
            dhi = dlo
        else:
            dlo = -r
            dhi = r
        for d in range(dlo, dhi + 1):
            if c * b - d * a != 1:
                continue
            if c * c + d * d >= n2:
                continue
            e = a - c
            f = b - d
            if e * e + f * f >= n2:
                continue
            out.append((c, d))
    return out


cdef int _keep(long long r, long long x, long long y,
               long long rt, long long xt, long long yt, int mode) nogil:
    cdef long long rq, xq, yq, den, num
    if mode == 1 and not (0 < x and x < xt):
        return 0
    if x * x - 2 * r * y < 0:
        return 0
    rq = rt - r
    xq = xt - x
    yq = yt - y
    if xq * xq - 2 * rq * yq < 0:
        return 0
    if mode == 1:
        den = rt * x - r * xt
        num = yt * x - y * xt
        if den == 0 or num == 0 or (num > 0) != (den > 0):
            return 0
    else:
        if r == 0 and x == 0 and y == 0:
            return 0
        if rq == 0 and xq == 0 and yq == 0:
            return 0
        if rt * x - r * xt == 0 and rt * y - r * yt == 0 and xt * y - x * yt == 0:
            return 0
    return 1


def scan_box(table, target, int bound, int lo, int hi, int mode):
    cdef long long T[4][3]
    cdef int i, j
    for i in range(4):
        for j in range(3):
            T[i][j] = table[i][j]
    cdef long long rt = target[0], xt = target[1], yt = target[2]
    cdef long long r, x, y
    cdef int c0, c1, c2, c3
    cdef Py_ssize_t n = 0, cap = 256
    cdef int *buf = <int *> malloc(cap * 4 * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for c0 in range(lo, hi + 1):
                for c1 in range(-bound, bound + 1):
                    for c2 in range(-bound, bound + 1):
                        for c3 in range(-bound, bound + 1):
                            r = c0 * T[0][0] + c1 * T[1][0] + c2 * T[2][0] + c3 * T[3][0]
                            x = c0 * T[0][1] + c1 * T[1][1] + c2 * T[2][1] + c3 * T[3][1]
                            y = c0 * T[0][2] + c1 * T[1][2] + c2 * T[2][2] + c3 * T[3][2]
                            if not _keep(r, x, y, rt, xt, yt, mode):
                                continue
                            if n == cap:
                                cap *= 2
                                buf = <int *> realloc(buf, cap * 4 * sizeof(int))
                                if buf == NULL:
                                    with gil:
                                        raise MemoryError()
                            buf[4 * n] = c0
                            buf[4 * n + 1] = c1
                            buf[4 * n + 2] = c2
                            buf[4 * n + 3] = c3
                            n += 1
        return [(buf[4 * i], buf[4 * i + 1], buf[4 * i + 2], buf[4 * i + 3]) for i in range(n)]
    finally:
        free(buf)
