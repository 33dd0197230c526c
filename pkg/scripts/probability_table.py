"""Alice's outcome distribution over the n^2 functions for each King outcome (a, b)."""

from __future__ import annotations

import argparse

import numpy as np

from meanking.designs import affine_plane
from meanking.functions import functions_from_plane
from meanking.mub import mub_build
from meanking.reconstruction import psi_function_basis


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=2)
    args = ap.parse_args()
    n = args.order
    mubs = mub_build(n)
    fs = functions_from_plane(*affine_plane(n))
    basis = psi_function_basis(mubs, fs)
    print("functions:", " ".join("".join(map(str, f.values)) for f in fs))
    for a in range(n + 1):
        for b in range(n):
            v = mubs.vec(a, b)
            probs = np.abs(basis.vectors.conj() @ np.kron(v, v.conj())) ** 2
            row = " ".join(f"{p:.3f}" for p in probs)
            print(f"a={a} b={b + 1}: {row}")


if __name__ == "__main__":
    main()
