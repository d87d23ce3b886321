"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 1000000]

Prints one row per kernel with the best-of-``repeat`` wall time for each
backend and the speedup.  Results of both backends are compared before
timing so a fast wrong answer does not go unnoticed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from invhankel import kernels
from invhankel.caratheodory import sample_schur_batch
from invhankel.objectives import build, grad
from invhankel.optimizer import DEFAULT_REGION


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def newton_args(which, grid_n):
    p = build(which)
    ps, pu = grad(p)
    pss, psu = grad(ps)
    pus, puu = grad(pu)
    (s_lo, s_hi), (u_lo, u_hi) = DEFAULT_REGION
    ss = s_lo + (np.arange(grid_n) + 0.5) * (s_hi - s_lo) / grid_n
    uu = u_lo + (np.arange(grid_n) + 0.5) * (u_hi - u_lo) / grid_n
    S, U = (a.ravel() for a in np.meshgrid(ss, uu, indexing="ij"))
    scale = float(max(np.abs(ps.coeffs).max(), np.abs(pu.coeffs).max()))
    f = lambda q: q.coeffs.astype(float)  # noqa: E731
    return (f(ps), f(pu), f(pss), f(psu), f(pus), f(puu), S, U, 50, 1e-10, scale)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=10**6, help="samples for the H_3 kernel")
    ap.add_argument("--grid-n", type=int, default=128)
    args = ap.parse_args(argv)

    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled extension not available; only the numpy fallback can be timed")

    t = sample_schur_batch(42, "boundary-biased", 0, args.n)
    p = build("h1").coeffs.astype(float)
    s, u = np.abs(t[:, 0]), np.abs(t[:, 1])
    nargs = newton_args("h1", args.grid_n)
    cases = {
        f"poly_eval h1 ({args.n} pts)": lambda m: m.poly_eval(p, s, u),
        f"h3_from_schur R1 ({args.n} rows)": lambda m: m.h3_from_schur(t, 1),
        f"newton h1 ({args.grid_n}^2 seeds)": lambda m: m.newton_multistart(*nargs),
    }

    print(f"{'kernel':<34}" + "".join(f"{name:>12}" for name in impls) + "   speedup")
    for label, call in cases.items():
        outs = {name: call(m) for name, m in impls.items()}
        if len(outs) == 2:
            a, b = (np.asarray(o[0] if isinstance(o, tuple) else o) for o in outs.values())
            if not np.allclose(a, b, rtol=1e-10, atol=1e-9, equal_nan=True):
                raise SystemExit(f"backends disagree on {label}")
        times = {name: best_of(lambda: call(m), args.repeat) for name, m in impls.items()}
        row = f"{label:<34}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in impls)
        if len(times) == 2:
            row += f"   {times['python'] / times['cython']:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
