#!/usr/bin/env python3
"""Writes data/adult_mini.csv: 500 synthetic census-like rows, 2 colors.

Columns f0..f5 stand in for age, fnlwgt, education-num, log capital-gain,
capital-loss and hours-per-week, z-scored. The color column is the sex label
(350 Male, 150 Female). Deterministic for a fixed seed.
"""
import argparse
import csv

import numpy as np


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--output", default="data/adult_mini.csv")
    ap.add_argument("--seed", type=int, default=20240501)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    counts = {"Male": 350, "Female": 150}
    rows = []
    for label, count in counts.items():
        male = label == "Male"
        age = np.clip(rng.normal(40 if male else 37, 13, count), 17, 90)
        fnlwgt = rng.lognormal(12.0, 0.5, count)
        edu = np.clip(np.round(rng.normal(10.2 if male else 10.0, 2.5, count)), 1, 16)
        gain = np.where(rng.random(count) < (0.1 if male else 0.05),
                        rng.lognormal(8.0, 1.0, count), 0.0)
        loss = np.where(rng.random(count) < 0.05, rng.normal(1900, 300, count), 0.0)
        hours = np.clip(rng.normal(42 if male else 36, 11, count), 1, 99)
        feats = np.column_stack([age, fnlwgt, edu, np.log1p(gain), loss, hours])
        rows.extend((f, label) for f in feats)

    x = np.array([f for f, _ in rows])
    x = (x - x.mean(axis=0)) / x.std(axis=0)
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"f{i}" for i in range(x.shape[1])] + ["color"])
        for feat, (_, label) in zip(x, rows):
            w.writerow([f"{v:.6f}" for v in feat] + [label])


if __name__ == "__main__":
    main()
