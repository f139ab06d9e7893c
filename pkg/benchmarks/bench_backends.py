#!/usr/bin/env python3
"""Benchmark the numba kernel against the pure-numpy fallback.

    python benchmarks/bench_backends.py [--steps 2000] [--sizes 256 2048 8192]
"""

import argparse
import time

import numpy as np

from carlfwm import kernels
from carlfwm.dynamics import RunConfig, init_quiet_start


def _state(n):
    s = init_quiet_start(RunConfig(n_particles=n, sigma_bar=0.1, a0=1e-2))
    return s.theta.copy(), s.p_bar.copy(), np.zeros(n), np.zeros(n), s.a_bar, 0j


def time_backend(fn, n, steps, repeats=3):
    best = np.inf
    for _ in range(repeats):
        theta, p, ct, cp, a, ca = _state(n)
        start = time.perf_counter()
        a, ca = fn(theta, p, ct, cp, a, ca, 0.0, 1e-3, steps)
        best = min(best, time.perf_counter() - start)
    return best, (theta, p, a)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 2048, 8192])
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba not installed - only the numpy path is available")
        return

    # warm up the JIT
    kernels.advance_jit(*_state(64)[:4], 1e-2 + 0j, 0j, 0.0, 1e-3, 2)

    print(f"{'N':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'us/step (numba)':>16} {'max |dtheta|':>12}")
    for n in args.sizes:
        t_np, (th_np, p_np, a_np) = time_backend(kernels.advance_numpy, n, args.steps)
        t_nb, (th_nb, p_nb, a_nb) = time_backend(kernels.advance_jit, n, args.steps)
        diff = float(np.abs(th_np - th_nb).max())
        assert diff < 1e-9 and abs(a_np - a_nb) < 1e-9, "backends disagree"
        print(f"{n:>6} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>8.1f} {1e6 * t_nb / args.steps:>16.1f} {diff:>12.2e}")


if __name__ == "__main__":
    main()
