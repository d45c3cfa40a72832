"""Sweep the bounded witness search over seeds and bounds and tabulate the filter counts.

A row with verified = 0 means nothing was found at that bound and seed; it is
not evidence against existence.
"""

import argparse
import json
import time
from pathlib import Path

from adhmcert.adhm import datum_to_dict
from adhmcert.certify import SHAPES, search_witness


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--shapes", nargs="*", default=sorted(SHAPES))
    p.add_argument("--bounds", nargs="*", type=int, default=[1, 2, 3])
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--attempts", type=int, default=200)
    p.add_argument("--out", default="results/witness_search.json")
    args = p.parse_args()
    rows = []
    print(f"{'shape':<18} {'bound':>5} {'seed':>4} {'attempts':>8} {'kernel':>6} {'roots':>5} {'found':>5} {'s':>6}")
    for shape in args.shapes:
        for bound in args.bounds:
            for seed in range(args.seeds):
                stats = {}
                t0 = time.perf_counter()
                found = search_witness(shape, bound, seed, args.attempts, stats=stats)
                dt = time.perf_counter() - t0
                rows.append({"shape": shape, "bound": bound, "seed": seed, **stats, "seconds": dt,
                             "witness": datum_to_dict(found) if found else None})
                print(f"{shape:<18} {bound:>5} {seed:>4} {stats['attempts']:>8} {stats['wide_kernel']:>6} "
                      f"{stats['j_roots']:>5} {stats['verified']:>5} {dt:>6.2f}")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(rows, indent=2) + "\n")
    print(f"written to {out}")


if __name__ == "__main__":
    main()
