"""Compare the compiled and pure-Python exact rank kernels.

    python benchmarks/bench_kernels.py [--sizes 20 40 80] [--repeat 5]

Also times hom_dim on the intertwiner systems of a few fixtures with each backend.
"""

import argparse
import random
import timeit

from stringcma import _kernels_py, kernels


def random_matrix(rng, n, per_row=3):
    """Sparse rows of +-1 entries, the shape intertwiner systems have."""
    rows = []
    for _ in range(n):
        row = [0] * n
        for k in rng.sample(range(n), min(per_row, n)):
            row[k] = rng.choice((-1, 1))
        rows.append(row)
    return rows


def bench_rank(sizes, repeat):
    try:
        from stringcma import _kernels
    except ImportError:
        _kernels = None
    rng = random.Random(0)
    print(f"{'n':>5} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for n in sizes:
        m = random_matrix(rng, n)
        t_py = min(timeit.repeat(lambda: _kernels_py.rank(m, n), number=1, repeat=repeat))
        if _kernels is None:
            print(f"{n:>5} {t_py * 1e3:>12.2f} {'n/a':>12} {'':>8}")
            continue
        try:
            t_cy = min(timeit.repeat(lambda: _kernels.rank(m, n), number=1, repeat=repeat))
        except OverflowError:
            print(f"{n:>5} {t_py * 1e3:>12.2f} {'overflow':>12} {'':>8}")
            continue
        assert _kernels.rank(m, n) == _kernels_py.rank(m, n)
        print(f"{n:>5} {t_py * 1e3:>12.2f} {t_cy * 1e3:>12.2f} {t_py / t_cy:>7.1f}x")


def bench_verify(repeat):
    from stringcma import oracle
    from stringcma.fixtures import load

    print(f"\n{'fixture':>8} {'python (ms)':>12} {'active (ms)':>12}  backend={kernels.BACKEND}")
    for name in ("F1", "F2", "F3"):
        p = load(name)
        oracle.rank = _kernels_py.rank
        t_py = min(timeit.repeat(lambda: oracle.verify_cma(p), number=1, repeat=repeat))
        oracle.rank = kernels.rank
        t_fast = min(timeit.repeat(lambda: oracle.verify_cma(p), number=1, repeat=repeat))
        print(f"{name:>8} {t_py * 1e3:>12.1f} {t_fast * 1e3:>12.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40, 60])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    bench_rank(args.sizes, args.repeat)
    bench_verify(args.repeat)


if __name__ == "__main__":
    main()
