"""Benchmark the compiled kernels against the numpy fallback on the two hot
loops: the brute-force oracle's double character sum and the per-place
Kloosterman histograms.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from klec import _kernels_py
from klec.algebra import build_field
from klec.curve import CurveParams
from klec.lfunction import oracle_log_coeffs

try:
    from klec import _kernels_cy
except ImportError:
    _kernels_cy = None


def oracle_workload(field, a, n):
    """The (w multiset, gamma log) the oracle feeds to power_sum_over_w."""
    ext = build_field(field.p, field.f * n)
    M = ext.M
    e = pow(field.q, a, M)
    k = np.arange(M, dtype=np.int64)
    w = _kernels_py._vadd((k * e) % M, (k + M // 2) % M, ext.zech_np, M)
    w = np.concatenate([w, np.array([M], dtype=np.int64)])
    w_logs, w_counts = np.unique(w, return_counts=True)
    emb, _ = ext.embedding_from(field)
    return ext, np.ascontiguousarray(w_logs), np.ascontiguousarray(w_counts), ext.log[emb[1]]


def bench_power_sum(backend, ext, w_logs, w_counts, gamma_log, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = backend.power_sum_over_w(w_logs, w_counts, gamma_log, ext.M, ext.zech_np)
        best = min(best, time.perf_counter() - t0)
    ops = len(w_logs) * ext.M
    return value, best, ops


def bench_kloosterman(backend, field, repeats=3):
    M = field.M
    beta_logs = range(0, M, max(1, M // 512))
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        acc = 0
        for bl in beta_logs:
            h = backend.kloosterman_histogram(bl, field.log[2], M, field.zech_np,
                                              field.trace_by_log, field.p)
            acc += int(h[0])
        best = min(best, time.perf_counter() - t0)
    return acc, best, len(list(beta_logs)) * M


def main():
    F3 = build_field(3, 1)
    ext, w_logs, w_counts, gamma_log = oracle_workload(F3, a=2, n=8)
    F6561 = build_field(3, 8)

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))

    print(f"{'kernel':<28}{'backend':<10}{'time':>10}{'Mops/s':>10}")
    rows = {}
    for name, mod in backends:
        value, secs, ops = bench_power_sum(mod, ext, w_logs, w_counts, gamma_log)
        rows.setdefault("oracle", {})[name] = (value, secs)
        print(f"{'oracle double sum (3,2,n=8)':<28}{name:<10}{secs:>9.3f}s{ops / secs / 1e6:>10.1f}")
    for name, mod in backends:
        value, secs, ops = bench_kloosterman(mod, F6561)
        rows.setdefault("kloosterman", {})[name] = (value, secs)
        print(f"{'kloosterman hists (F_3^8)':<28}{name:<10}{secs:>9.3f}s{ops / secs / 1e6:>10.1f}")

    for kernel, by_backend in rows.items():
        values = {v for v, _ in by_backend.values()}
        assert len(values) == 1, f"backends disagree on {kernel}: {by_backend}"
        if len(by_backend) == 2:
            speedup = by_backend["python"][1] / by_backend["cython"][1]
            print(f"{kernel}: compiled speedup {speedup:.1f}x")

    # end-to-end: one oracle coefficient through whichever backend is active
    t0 = time.perf_counter()
    cs = oracle_log_coeffs(CurveParams(F3, F3.elem(1), 2), 8)
    print(f"end-to-end oracle n<=8 (active backend): {time.perf_counter() - t0:.3f}s, c_8 = {cs[-1]}")


if __name__ == "__main__":
    main()
