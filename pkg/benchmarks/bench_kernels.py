"""Compare the compiled and pure-Python kernels.

Run with ``python benchmarks/bench_kernels.py``.  Two workloads:

* raw kernels: until/release/next over a bundle of random lassos;
* end to end: 1,000 random formulas over the small-trace corpus.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tracelogic import corpus, kernels
from tracelogic import semantics


def _layout(n_traces, rng, max_prefix=20, max_cycle=20):
    prefix = rng.integers(0, max_prefix + 1, n_traces).astype(np.int64)
    cycle = rng.integers(1, max_cycle + 1, n_traces).astype(np.int64)
    sizes = prefix + cycle
    start = np.zeros(n_traces, dtype=np.int64)
    start[1:] = np.cumsum(sizes)[:-1]
    return start, prefix, cycle, int(sizes.sum())


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_raw(backend, n_traces, repeat):
    rng = np.random.default_rng(0)
    start, prefix, cycle, n = _layout(n_traces, rng)
    p = rng.integers(0, 2, n).astype(np.uint8)
    q = (rng.random(n) < 0.1).astype(np.uint8)

    def run():
        backend.until(p, q, start, prefix, cycle)
        backend.release(p, q, start, prefix, cycle)
        backend.next_step(p, start, prefix, cycle, True)

    return _time(run, repeat), n


def bench_end_to_end(backend, n_formulas):
    saved = (kernels.next_step, kernels.until, kernels.release)
    kernels.next_step, kernels.until, kernels.release = (
        backend.next_step, backend.until, backend.release)
    try:
        traces = corpus.trace_corpus()
        formulas = corpus.random_formulas(n_formulas)
        t0 = time.perf_counter()
        ev = semantics.Evaluator(traces)
        for f in formulas:
            ev.vector(f)
        return time.perf_counter() - t0
    finally:
        kernels.next_step, kernels.until, kernels.release = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--traces", type=int, default=5000)
    ap.add_argument("--formulas", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        backends.append(("cython", kernels.compiled_backend))
    else:
        print("compiled kernels not built; timing the Python fallback only")

    print(f"{'backend':<8} {'positions':>10} {'raw (ms)':>10} {'end-to-end (s)':>15}")
    results = {}
    for name, b in backends:
        raw, n = bench_raw(b, args.traces, args.repeat)
        e2e = bench_end_to_end(b, args.formulas)
        results[name] = (raw, e2e)
        print(f"{name:<8} {n:>10} {raw * 1e3:>10.2f} {e2e:>15.2f}")
    if len(results) == 2:
        (pr, pe), (cr, ce) = results["python"], results["cython"]
        print(f"speedup: raw {pr / cr:.1f}x, end-to-end {pe / ce:.1f}x")


if __name__ == "__main__":
    main()
