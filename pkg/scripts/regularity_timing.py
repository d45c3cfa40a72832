"""Time the exact regularity decision against point sampling on random data with mu = 0.

Data come from two constructions: charge one with I and J of rank one and
orthogonal images (often regular), and commuting A, B with J = 0 (never
regular).  The table reports how often each method declares regularity.
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from generators import charge_one_zero_mu, commuting_zero_mu  # noqa: E402

from adhmcert.regularity import global_regularity, sample_regularity  # noqa: E402


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    args = p.parse_args()
    rng = random.Random(args.seed)
    cases = [("charge1", n, r) for n in (2, 3, 4) for r in (2, 3)] + [("commuting", n, c) for n in (2, 3) for c in (2, 3)]
    print(f"{'family':<10} {'n':>2} {'r|c':>3} {'exact regular':>13} {'sampled regular':>15} {'exact s':>8} {'sample s':>8}")
    for family, n, k in cases:
        exact_ok = sampled_ok = 0
        t_exact = t_sample = 0.0
        for i in range(args.count):
            d = charge_one_zero_mu(n, k, rng) if family == "charge1" else commuting_zero_mu(n, 2, k, rng)
            t0 = time.perf_counter()
            exact = global_regularity(d, find_witness=False)
            t1 = time.perf_counter()
            sampled = sample_regularity(d, args.samples, seed=i)
            t2 = time.perf_counter()
            exact_ok += exact.regular
            sampled_ok += sampled.regular
            t_exact += t1 - t0
            t_sample += t2 - t1
            if sampled.regular is False and exact.regular:
                raise AssertionError("sampling refuted a datum declared regular")
        print(f"{family:<10} {n:>2} {k:>3} {exact_ok:>13} {sampled_ok:>15} {t_exact:>8.3f} {t_sample:>8.3f}")


if __name__ == "__main__":
    main()
