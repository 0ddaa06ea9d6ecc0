"""Time the subset sum for mac homology on polygons and cyclic spheres of growing size."""

import argparse
import time

from pmtopo.corpus import cyclic_sphere, polygon
from pmtopo.mac import mac_homology


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=14)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print(f"{'complex':>20s} {'m':>3s} {'subsets':>8s} {'seconds':>8s}  poincare")
    for m in range(4, args.max_m + 1):
        for label, K in ((f"polygon({m})", polygon(m)), (f"cyclic({m},4)", cyclic_sphere(m, 4) if m >= 6 else None)):
            if K is None:
                continue
            t0 = time.perf_counter()
            P = mac_homology(K, cap=None, workers=args.workers).total
            dt = time.perf_counter() - t0
            print(f"{label:>20s} {m:3d} {2 ** m - 1:8d} {dt:8.3f}  {P.poincare()}")


if __name__ == "__main__":
    main()
