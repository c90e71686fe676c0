# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: the hot character-sum loops in the discrete-log domain.

Contracts match ``_kernels_py``; see there for conventions (M is both the
group order and the zero sentinel).
"""

import numpy as np

BACKEND = "cython"


cdef inline long long _zadd(long long a, long long b,
                            const long long[::1] zech, long long M) noexcept nogil:
    # log of g^a + g^b; a, b, result in 0..M-1 with M meaning zero
    cdef long long d, z
    if a == M:
        return b
    if b == M:
        return a
    d = b - a
    if d < 0:
        d += M
    z = zech[d]
    if z == M:
        return M
    d = a + z
    if d >= M:
        d -= M
    return d


def power_sum_over_w(const long long[::1] w_logs, const long long[::1] w_counts,
                     long long gamma_log, long long M, const long long[::1] zech):
    cdef long long total = 0, S, i, sq, t, h, wl, wx
    cdef Py_ssize_t wi, n = w_logs.shape[0]
    with nogil:
        for wi in range(n):
            wl = w_logs[wi]
            S = 0
            for i in range(M):
                sq = i + i
                if sq >= M:
                    sq -= M
                if wl == M:
                    t = sq
                else:
                    wx = wl + i
                    if wx >= M:
                        wx -= M
                    t = _zadd(sq, wx, zech, M)
                h = _zadd(t, gamma_log, zech, M)
                if h != M:
                    # lambda(x) * lambda(h): +-1 from log parities
                    if ((i ^ h) & 1) == 0:
                        S += 1
                    else:
                        S -= 1
            total += w_counts[wi] * S
    return int(total)


def gauss_histogram(long long beta_log, long long M,
                    const long long[::1] trace_by_log, long long p):
    out_arr = np.zeros(p, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long i, k
    with nogil:
        for i in range(M):
            k = beta_log + i
            if k >= M:
                k -= M
            if (i & 1) == 0:
                out[trace_by_log[k]] += 1
            else:
                out[trace_by_log[k]] -= 1
    return out_arr


def kloosterman_histogram(long long beta_log, long long gamma_log, long long M,
                          const long long[::1] zech,
                          const long long[::1] trace_by_log, long long p):
    out_arr = np.zeros(p, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long i, j, y, k
    with nogil:
        for i in range(M):
            j = gamma_log - i
            if j < 0:
                j += M
            y = _zadd(i, j, zech, M)
            if y == M:
                out[0] += 1
            else:
                k = beta_log + y
                if k >= M:
                    k -= M
                out[trace_by_log[k]] += 1
    return out_arr
