"""Compare the compiled kernels against the pure-Python twin.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends; the results must agree exactly.
"""

import argparse
import gc
import time

from enriq import _pykernels
from enriq.intlin import _fp_data, coordinate_bounds, orthogonal_complement, parity_coset
from enriq.lattice import fano_delta

try:
    from enriq import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    H = fano_delta()
    lat = orthogonal_complement(H)
    par = parity_coset(lat, H)
    w, B, p = _fp_data(lat)
    n = 8 + H.square()
    yield "fincke-pohst H=Delta (parity)", "fp_enumerate", (w, B, n * p, True, par, None, 0)
    yield "fincke-pohst H=Delta (no parity)", "fp_enumerate", (w, B, n * p, True, None, None, 0)
    yield "window |G|^2<=24", "fp_enumerate", (w, B, 24 * p, False, None, None, 0)
    bounds = [min(b, 3) for b in coordinate_bounds(lat, -n)][:7]
    sub = [row[:7] for row in lat.gram[:7]]
    yield "box search rank 7, norm -18", "box_enumerate", (sub, -18, bounds, None, 0)
    yield "zero-sum scan B=1", "zero_sum_scan", (10, 1, None, 100)
    yield "zero-sum scan B=2", "zero_sum_scan", (10, 2, None, 100)


def timed(fn, args, repeat):
    # large result lists otherwise trigger repeated full collections
    best = float("inf")
    out = None
    for _ in range(repeat):
        out = None
        gc.collect()
        gc.disable()
        try:
            t = time.perf_counter()
            out = fn(*args)
            best = min(best, time.perf_counter() - t)
        finally:
            gc.enable()
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ns = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
    print(f"{'workload':36s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn, args in workloads():
        tp, rp = timed(getattr(_pykernels, fn), args, ns.repeat)
        if _ckernels is None:
            print(f"{name:36s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, rc = timed(getattr(_ckernels, fn), args, ns.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        del rp, rc
        print(f"{name:36s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
