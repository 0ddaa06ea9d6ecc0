"""Print a one-line summary per corpus complex: shape, homology, Golod verdict, prover verdict."""

import argparse
import time

from pmtopo.corpus import STANDARD_FIXTURES, corpus_generate
from pmtopo.decomp import p_membership
from pmtopo.homology import reduced_homology
from pmtopo.mac import golod_status, mac_homology
from pmtopo.pseudo import classify

EXTRA = [
    ("cross_polytope_boundary", (4,)),
    ("cyclic_sphere", (7, 4)),
    ("cyclic_sphere", (8, 6)),
    ("polygon", (8,)),
]


def survey(name, params, cap):
    K = corpus_generate(name, *params)
    t0 = time.perf_counter()
    c = classify(K)
    row = {
        "complex": name + "".join(f"_{p}" for p in params),
        "m": K.m,
        "dim": K.dim,
        "pm": "closed" if c.pseudomanifold else ("bdry" if c.pseudomanifold_with_boundary else "-"),
        "H(K)": reduced_homology(K).describe(),
        "H(Z_K)": mac_homology(K, cap=cap).total.poincare(),
        "golod": golod_status(K, cap=cap).verdict,
    }
    cert = p_membership(K, cap=cap)
    row["P"] = cert.grading + (f" via {'/'.join(cert.rules_used())}" if cert.succeeded else "")
    row["secs"] = f"{time.perf_counter() - t0:.2f}"
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=20)
    args = ap.parse_args()
    jobs = list(STANDARD_FIXTURES.values()) + EXTRA
    for name, params in jobs:
        row = survey(name, params, args.cap)
        print("  ".join(f"{k}={v}" for k, v in row.items()))


if __name__ == "__main__":
    main()
