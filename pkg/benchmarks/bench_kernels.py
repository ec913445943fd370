"""Compare the numpy and numba kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Times matrix assembly at N = 128, 256, 512 and a 10**6-term Blaschke sum.
Numba compile time is excluded by a warm-up call.
"""
import argparse
import time

import numpy as np

from compop import _accel
from compop.symbol import make_symbol, to_disk_model
from compop.series import lft_series


def _assembly_inputs(N):
    m = to_disk_model(make_symbol(2, 1 + 1j))
    phi = lft_series(m.alpha, m.beta, m.gamma, m.delta, N).coeffs
    h = lft_series(0, 2, m.gamma, m.delta, N).coeffs
    return np.ascontiguousarray(h), np.ascontiguousarray(phi)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [_accel.numpy_kernels]
    if _accel.numba_kernels is not None:
        backends.append(_accel.numba_kernels)
    cases = []
    for N in (128, 256, 512):
        h, phi = _assembly_inputs(N)
        cases.append((f"assemble N={N}", lambda k, h=h, phi=phi, N=N: k.power_columns(h, phi, N)))
    cases.append(("blaschke n=1e6", lambda k: k.blaschke_terms(1 + 0j, 10**6)))

    print(f"{'case':<18}" + "".join(f"{k.name:>12}" for k in backends) + "     speedup")
    for name, fn in cases:
        row = []
        for k in backends:
            fn(k)  # warm-up (numba compile, caches)
            row.append(best_of(lambda: fn(k), args.repeat))
        speed = f"{row[0] / row[-1]:>10.1f}x" if len(row) > 1 else ""
        print(f"{name:<18}" + "".join(f"{t * 1e3:>10.1f}ms" for t in row) + speed)


if __name__ == "__main__":
    main()
