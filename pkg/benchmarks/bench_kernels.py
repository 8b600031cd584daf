"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Reports the best wall time per call for the ECR product table on growing
frames and for pure-equilibrium search on growing games. The first numba
call (compilation) is excluded.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from dngame import kernels
from dngame.dnumbers import DFrame, DNumber, NonExclusivityMatrix


def random_case(rng, n, focal):
    frame = DFrame(tuple(f"l{i}" for i in range(n)))
    k = n + 1
    base = np.triu(rng.uniform(0, 1, (k, k)), 1)
    M = NonExclusivityMatrix(frame, base + base.T + np.eye(k))

    def one():
        masks = rng.choice(np.arange(1, 1 << k), size=focal, replace=False)
        w = rng.dirichlet(np.ones(focal))
        return DNumber._from_masks(frame, {int(m): float(v) for m, v in zip(masks, w)})

    return one().arrays(), one().arrays(), M.base


def best_time(fn, repeat):
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    return min(t.repeat(repeat=repeat, number=n)) / n


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    print(f"{'kernel':<10} {'size':>12} {'numba us':>10} {'numpy us':>10} {'ratio':>7}")
    for n, focal in ((3, 8), (7, 40), (10, 200), (12, 600)):
        (m1, v1), (m2, v2), base = random_case(rng, n, focal)
        a, ka = kernels.ecr_accumulate_numba(m1, v1, m2, v2, base)
        b, kb = kernels.ecr_accumulate_numpy(m1, v1, m2, v2, base)
        assert np.allclose(a, b, atol=1e-14) and abs(ka - kb) < 1e-14
        t_nb = best_time(lambda: kernels.ecr_accumulate_numba(m1, v1, m2, v2, base), args.repeat)
        t_np = best_time(lambda: kernels.ecr_accumulate_numpy(m1, v1, m2, v2, base), args.repeat)
        print(f"{'ecr':<10} {f'n={n} f={focal}':>12} {t_nb * 1e6:10.1f} {t_np * 1e6:10.1f} {t_np / t_nb:7.1f}")

    for p in (6, 50, 500):
        u1, u2 = rng.uniform(size=(p, p)), rng.uniform(size=(p, p))
        assert np.array_equal(kernels.pure_nash_mask_numba(u1, u2), kernels.pure_nash_mask_numpy(u1, u2))
        t_nb = best_time(lambda: kernels.pure_nash_mask_numba(u1, u2), args.repeat)
        t_np = best_time(lambda: kernels.pure_nash_mask_numpy(u1, u2), args.repeat)
        print(f"{'nash':<10} {f'{p}x{p}':>12} {t_nb * 1e6:10.1f} {t_np * 1e6:10.1f} {t_np / t_nb:7.1f}")


if __name__ == "__main__":
    main()
