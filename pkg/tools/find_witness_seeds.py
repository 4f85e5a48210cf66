"""Scan jitter seeds for each near-infimum witness and print the first hits.

The printed table is what ``ratio.WITNESS_SEEDS`` and the witness tests freeze.
Run: python tools/find_witness_seeds.py [--max-seeds N]
"""
import argparse

import numpy as np

from morseposet import kernels
from morseposet.classify import LABELS, labels_from_status
from morseposet.ratio import INFIMA, witness_sphere

DELTAS = (1e-2, 1e-3, 1e-4)


def jitter_batch(label, delta, seeds):
    _, pts, _ = INFIMA[label]
    pts = np.asarray(pts, dtype=np.float64)
    c, r = witness_sphere(label)
    # Same draws as geometry.perturb(pts, delta, seed, sphere=(c, r)).
    J = np.stack([np.random.default_rng(s).uniform(-1.0, 1.0, size=pts.shape) for s in seeds])
    X = pts + delta * J
    v = X - c
    return c + r * v / np.linalg.norm(v, axis=2, keepdims=True)


def first_seed(label, delta, max_seeds, chunk=20000):
    code = LABELS.index(label)
    for start in range(0, max_seeds, chunk):
        seeds = np.arange(start, min(start + chunk, max_seeds))
        status, _ = kernels.subset_status(jitter_batch(label, delta, seeds), 1e-9)
        hit = np.flatnonzero(labels_from_status(status) == code)
        if hit.size:
            return int(seeds[hit[0]])
    return None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-seeds", type=int, default=1_000_000)
    args = ap.parse_args()
    for label in LABELS:
        row = {d: first_seed(label, d, args.max_seeds) for d in DELTAS}
        print(label, row)


if __name__ == "__main__":
    main()
