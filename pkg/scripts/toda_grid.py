#!/usr/bin/env python3
"""Check both Toda chain identities on the grid 1 <= s < r <= r_max, in parallel."""

import argparse
import os
import time
from concurrent.futures import ProcessPoolExecutor

from aztec_efp.toda import toda_residual_r, toda_residual_s


def check(rs):
    r, s = rs
    return r, s, toda_residual_s(r, s).holds, toda_residual_r(r, s).holds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=12)
    args = ap.parse_args()
    grid = [(r, s) for r in range(2, args.r_max + 1) for s in range(1, r)]
    t0 = time.perf_counter()
    with ProcessPoolExecutor(max_workers=int(os.environ.get("EFP_THREADS", os.cpu_count() or 1))) as ex:
        results = list(ex.map(check, grid))
    bad = [(r, s) for r, s, a, b in results if not (a and b)]
    print(f"{len(grid)} points, {len(bad)} failures {bad}, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
