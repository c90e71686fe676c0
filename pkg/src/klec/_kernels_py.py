"""Pure-Python (numpy) kernels: the hot character-sum loops.

Same contracts as the compiled twin in ``_kernels_cy``; everything works in
the discrete-log domain of one tabulated field.  Logs live in 0..M-1 and the
value M is the sentinel for the zero element; ``zech[k] = log(1 + g^k)`` with
the sentinel where 1 + g^k = 0.
"""

import numpy as np

BACKEND = "python"


def _vadd(a, b, zech, M):
    """Log-domain addition g^a + g^b, elementwise with sentinel handling."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    az = a == M
    bz = b == M
    d = np.where(az | bz, 0, (b - a) % M)
    z = zech[d]
    res = np.where(z == M, np.int64(M), (a + z) % M)
    res = np.where(bz, a, res)
    res = np.where(az, b, res)
    return res


def power_sum_over_w(w_logs, w_counts, gamma_log, M, zech):
    """sum over w of count(w) * sum over x != 0 of lambda(x^3 + w x^2 + gamma x).

    Factored as lambda(x) * lambda(x^2 + w x + gamma); quadratic characters are
    log parities, so the inner sum is a dot product of two sign vectors.
    """
    i = np.arange(M, dtype=np.int64)
    sq = (2 * i) % M
    lam_x = (1 - 2 * (i & 1)).astype(np.int64)
    gamma_arr = np.full(M, gamma_log, dtype=np.int64)
    total = 0
    for wl, cnt in zip(w_logs, w_counts):
        if wl == M:
            h1 = sq
        else:
            h1 = _vadd(sq, (wl + i) % M, zech, M)
        h = _vadd(h1, gamma_arr, zech, M)
        lam_h = np.where(h == M, 0, 1 - 2 * (h & 1)).astype(np.int64)
        total += int(cnt) * int(lam_x @ lam_h)
    return total


def gauss_histogram(beta_log, M, trace_by_log, p):
    """Signed counts n_r = sum over x != 0 with Tr(beta*x) = r of lambda(x)."""
    i = np.arange(M, dtype=np.int64)
    r = trace_by_log[(beta_log + i) % M]
    pos = np.bincount(r[0::2], minlength=p)  # even logs: lambda = +1
    neg = np.bincount(r[1::2], minlength=p)
    return (pos - neg).astype(np.int64)


def kloosterman_histogram(beta_log, gamma_log, M, zech, trace_by_log, p):
    """Counts n_r = #{x != 0 : Tr(beta*(x + gamma/x)) = r}."""
    i = np.arange(M, dtype=np.int64)
    inv = (gamma_log - i) % M
    y = _vadd(i, inv, zech, M)
    idx = np.where(y == M, np.int64(M), (beta_log + y) % M)
    r = trace_by_log[idx]  # index M holds the trace of zero
    return np.bincount(r, minlength=p).astype(np.int64)
