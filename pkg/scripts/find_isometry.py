#!/usr/bin/env python3
"""Brute-force search for hyperbolic isometries of U + A1.

Enumerates integer matrices column by column (images of the basis
vectors, entries in a small box) satisfying M^T G M = G, keeps those
with trace > 3, and reports the entropy of the smallest-trace hit.
Used as the discovery oracle behind the spectral test vectors.
"""

import argparse
from itertools import product

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from k3cert.spectral import entropy, is_isometry

G = [[0, 1, 0], [1, 0, 0], [0, 0, -2]]


def bilinear(u, v):
    return u[0] * v[1] + u[1] * v[0] - 2 * u[2] * v[2]


def search(bound):
    rng = range(-bound, bound + 1)
    hits = []
    for v1 in product(rng, repeat=3):
        if bilinear(v1, v1) != 0:
            continue
        for v2 in product(rng, repeat=3):
            if bilinear(v2, v2) != 0 or bilinear(v1, v2) != 1:
                continue
            for v3 in product(rng, repeat=3):
                if (bilinear(v3, v3) != -2 or bilinear(v1, v3) != 0
                        or bilinear(v2, v3) != 0):
                    continue
                m = [[v1[i], v2[i], v3[i]] for i in range(3)]
                tr = v1[0] + v2[1] + v3[2]
                if tr > 3 and is_isometry(m, G):
                    hits.append((tr, m))
    return sorted(hits)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=5,
                    help="entry box half-width (default 5)")
    args = ap.parse_args()
    hits = search(args.bound)
    print(f"{len(hits)} isometries with trace > 3 in [-{args.bound},{args.bound}]^9")
    if not hits:
        return
    tr, m = hits[0]
    print(f"smallest trace: {tr}")
    for row in m:
        print("  " + " ".join(f"{x:3d}" for x in row))
    rep = entropy(m, G)
    print(f"class: {rep.dynamical_class}")
    print(f"spectral radius: {rep.spectral_radius:.10f}")
    print(f"entropy: {rep.entropy:.10f}")
    print(f"salem factor: {rep.salem_factor}")


if __name__ == "__main__":
    main()
