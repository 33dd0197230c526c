"""Measured |<psi_p|B>| for p in B against 1/sqrt(k) and sqrt(k)/v on every realization."""

from __future__ import annotations

import numpy as np

from meanking.designs import affine_plane, hadamard_design, sylvester_hadamard
from meanking.mub import mub_build
from meanking.realization import hadamard8_realization, incidence_realization, mub_realization
from meanking.reconstruction import psi_point_basis


def realizations():
    for q in (2, 3, 4, 5, 7, 8, 9):
        yield f"incidence AG(2,{q})", incidence_realization(*affine_plane(q))
    for k in (2, 3, 4):
        yield f"incidence H{2**k}", incidence_realization(*hadamard_design(sylvester_hadamard(k)))
    yield "three-qubit H8", hadamard8_realization()
    for n in (2, 3, 5, 7, 9):
        yield f"mub AG(2,{n})", mub_realization(*affine_plane(n), mub_build(n))


def main() -> None:
    print(f"{'realization':<22}{'v':>4}{'k':>4}{'measured':>11}{'1/sqrt(k)':>11}{'sqrt(k)/v':>11}{'off-support':>13}")
    for name, real in realizations():
        basis = psi_point_basis(real)
        ov = np.abs(basis.vectors.conj() @ real.vectors.T)
        inc = real.design.incidence().T.astype(bool)
        v, k = real.design.v, real.design.k
        print(
            f"{name:<22}{v:>4}{k:>4}{ov[inc].mean():>11.6f}{1 / np.sqrt(k):>11.6f}"
            f"{np.sqrt(k) / v:>11.6f}{ov[~inc].max(initial=0):>13.1e}"
        )


if __name__ == "__main__":
    main()
