"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 8] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from boolq import kernels


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--dt-n", type=int, default=8, help="n for the decision-tree kernel")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    compiled = kernels.compiled_backend()
    backends = [("python", kernels.python_backend)]
    if compiled is None:
        print("compiled kernels not built; timing the Python fallback only")
    else:
        backends.append(("cython", compiled))

    rng = np.random.default_rng(args.seed)
    n = args.n
    bits = rng.integers(0, 2, size=1 << n, dtype=np.uint8)
    dt_bits = rng.integers(0, 2, size=1 << args.dt_n, dtype=np.uint8)
    coeffs = kernels.python_backend.mobius(bits.astype(np.int64), n)

    jobs = {
        "mobius": lambda b: b.mobius(bits.astype(np.int64), n),
        "bs_profile": lambda b: b.bs_profile(bits, n),
        f"dt_depth (n={args.dt_n})": lambda b: b.dt_depth(dt_bits, args.dt_n),
        "alg_a_profile": lambda b: b.alg_a_profile(coeffs, n),
        "lemma1_scan": lambda b: b.lemma1_scan(bits, coeffs, n),
    }

    print(f"n={n} seed={args.seed} best of {args.repeat}")
    print(f"{'kernel':<22}" + "".join(f"{name:>12}" for name, _ in backends) + ("   speedup" if compiled else ""))
    for label, fn in jobs.items():
        times = []
        for _, b in backends:
            fn(b)
            times.append(min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)))
        row = f"{label:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if compiled:
            row += f"{times[0] / times[1]:>9.0f}x"
        print(row)


if __name__ == "__main__":
    main()
