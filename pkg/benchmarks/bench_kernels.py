"""Compare the numba-compiled series kernels with their interpreted versions.

Run ``python benchmarks/bench_kernels.py``. With ``COULOMB_TRAJ_NO_NUMBA=1``
both columns time the interpreted code.
"""
from __future__ import annotations

import time

import numpy as np

from coulomb_traj import _accel
from coulomb_traj.specfun import _kernels as K

CASES = {
    "kummer_m_series |z|=20": (K.kummer_m_series, (0.6 + 0.8j, 3.3 + 0j, 20j, 2, 10000, 1e-17)),
    "kummer_u_asymptotic |w|=60": (K.kummer_u_asymptotic, (1.6 - 0.8j, 3.2 + 0j, -60j, 2, 10000, 1e-17)),
    "hyp2f1_series x=0.25": (K.hyp2f1_series, (0.3 + 0j, 1.7 + 0j, 0.5 + 0j, 0.25 + 0j, 2, 10000, 1e-17)),
    "legendre_t_series t=0.2": (K.legendre_t_series, (1.2, 0.2, 10000, 1e-17)),
}


def best_of(fn, args, repeat: int = 5, number: int = 20) -> float:
    fn(*args)  # compile / warm up
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn(*args)
        times.append((time.perf_counter() - t0) / number)
    return min(times)


def main() -> None:
    print(f"numba enabled: {_accel.USE_NUMBA}")
    print(f"{'kernel':30s} {'compiled (us)':>14s} {'python (us)':>12s} {'speedup':>8s}  max |diff|")
    for name, (fn, args) in CASES.items():
        fast = best_of(fn, args)
        slow = best_of(fn.py_func, args, repeat=3, number=2)
        a, _ = fn(*args)
        b, _ = fn.py_func(*args)
        diff = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
        print(f"{name:30s} {fast * 1e6:14.1f} {slow * 1e6:12.1f} {slow / fast:8.1f}  {diff:.1e}")


if __name__ == "__main__":
    main()
