"""Seeded Monte-Carlo success rates and timings for every scenario."""

from __future__ import annotations

import argparse
import time

from meanking.protocol import build_scenario, simulate

CASES = [
    ("hadamard8", {}),
    ("affine", {"order": 3}),
    ("affine", {"order": 5}),
    ("hadamard", {"k": 3}),
    ("hadamard", {"k": 4}),
    ("function", {"order": 2}),
    ("function", {"order": 3}),
    ("function", {"order": 5}),
    ("mub-point", {"order": 3}),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, params in CASES:
        sc = build_scenario(name, **params)
        t0 = time.perf_counter()
        wins = sum(tr.success for tr in simulate(sc, seed=args.seed, trials=args.trials))
        dt = time.perf_counter() - t0
        tag = ",".join(f"{k}={v}" for k, v in params.items())
        print(f"{name:<10}{tag:<9} success {wins}/{args.trials}  {dt:.2f}s")


if __name__ == "__main__":
    main()
