"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [N]

Builds the discretized Hamiltonian for the reference well (B=7, p=1/2) on
an N-point grid (default 12000), then times Sturm counting, the shifted
tridiagonal solve, and a full lowest-9 eigensolve through each backend.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from susywell import kernels
from susywell.oracle import RadialGrid, build_hamiltonian, lowest_eigenvalues
from susywell.params import make_params


def _time(fn, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 12000
    if not kernels.NUMBA_ENABLED:
        print("numba is not active in this process (SUSYWELL_PURE_NUMPY set or "
              "numba missing); relaunch without the flag to compare backends")
        return 1

    params = make_params(7, "1/2")
    grid = RadialGrid(x_min=0.01, x_max=24.0, n_points=n)
    H = build_hamiltonian(params, grid)
    off2 = H.offdiag * H.offdiag
    pivmin = kernels.pivot_floor(off2)
    shifts = np.linspace(1.0, 239.0, 9)
    rhs = np.sin(np.linspace(0.1, 20.0, n))

    # warm the JIT before timing
    kernels._sturm_counts_numba(H.diag, off2, shifts, pivmin)
    kernels._tridiag_solve_numba(H.diag, H.offdiag, 58.0, rhs, pivmin)

    c_nb = kernels._sturm_counts_numba(H.diag, off2, shifts, pivmin)
    c_np = kernels._sturm_counts_numpy(H.diag, off2, shifts, pivmin)
    assert np.array_equal(c_nb, c_np), "backends disagree on Sturm counts"
    x_nb = kernels._tridiag_solve_numba(H.diag, H.offdiag, 58.0, rhs, pivmin)
    x_np = kernels._tridiag_solve_loop(H.diag, H.offdiag, 58.0, rhs, pivmin)
    assert np.allclose(x_nb, x_np, rtol=1e-12, atol=0.0), "backends disagree on solve"

    t_count_nb = _time(lambda: kernels._sturm_counts_numba(H.diag, off2, shifts, pivmin), 5)
    t_count_np = _time(lambda: kernels._sturm_counts_numpy(H.diag, off2, shifts, pivmin), 3)
    t_solve_nb = _time(lambda: kernels._tridiag_solve_numba(H.diag, H.offdiag, 58.0, rhs, pivmin), 5)
    t_solve_np = _time(lambda: kernels._tridiag_solve_loop(H.diag, H.offdiag, 58.0, rhs, pivmin), 3)

    t_eig_nb = _time(lambda: lowest_eigenvalues(H, 9), 2)
    kernels.NUMBA_ENABLED = False
    try:
        t_eig_np = _time(lambda: lowest_eigenvalues(H, 9), 1)
    finally:
        kernels.NUMBA_ENABLED = True

    rows = [
        ("sturm_counts (9 shifts)", t_count_nb, t_count_np),
        ("tridiag_solve", t_solve_nb, t_solve_np),
        ("lowest_eigenvalues(m=9)", t_eig_nb, t_eig_np),
    ]
    print(f"N = {n} interior points; times are best-of-run seconds")
    print(f"{'kernel':28s} {'numba':>12s} {'numpy':>12s} {'speedup':>9s}")
    for name, a, b in rows:
        print(f"{name:28s} {a:12.6f} {b:12.6f} {b / a:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
