"""Unit vectors |B> per block with <B|C> = delta (parallel) or k/v (nonparallel)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS
from .designs import (
    IncidenceDesign,
    Resolution,
    affine_resolvable_check,
    hadamard_design,
    sylvester_hadamard,
)
from .mub import MubFamily


@dataclass(frozen=True)
class Realization:
    design: IncidenceDesign
    res: Resolution
    vectors: np.ndarray  # (b, D); row i is |B_i>
    kind: str = "custom"
    mubs: MubFamily | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def gram(self) -> np.ndarray:
        """gram[i, j] = <B_i|B_j>."""
        return self.vectors.conj() @ self.vectors.T

    def class_state(self, class_index: int) -> np.ndarray:
        """(1/sqrt|C|) sum_{B in C} |B>."""
        members = list(self.res.classes[class_index])
        return self.vectors[members].sum(axis=0) / np.sqrt(len(members))


@dataclass(frozen=True)
class RealizationReport:
    ok: bool
    max_parallel_dev: float
    max_nonparallel_dev: float
    worst_pair: tuple[int, int] | None
    tol: float


def incidence_realization(design: IncidenceDesign, res: Resolution) -> Realization:
    """|B> = v_B / sqrt(k) in C^v, v_B the 0/1 incidence vector."""
    affine_resolvable_check(design, res)
    vecs = design.incidence().astype(np.complex128) / np.sqrt(design.k)
    return Realization(design, res, vecs, kind="incidence")


def mub_realization(plane: IncidenceDesign, res: Resolution, mubs: MubFamily) -> Realization:
    """Line b of class a maps to v_{a,b} (x) conj(v_{a,b}) in C^{n^2}."""
    n = mubs.q
    if plane.v != n * n or len(res.classes) != n + 1 or len(mubs) != n + 1:
        raise ValueError(f"plane of {plane.v} points / {len(res.classes)} classes does not match MUBs of dimension {n}")
    vecs = np.zeros((plane.b, n * n), dtype=np.complex128)
    for a, members in enumerate(res.classes):
        if len(members) != n:
            raise ValueError(f"class {a} has {len(members)} lines, expected {n}")
        for b, line in enumerate(members):
            v = mubs.vec(a, b)
            vecs[line] = np.kron(v, v.conj())
    return Realization(plane, res, vecs, kind="mub", mubs=mubs)


_R = 1 / np.sqrt(2)
_Q = 1 / (2 * np.sqrt(2))
_i = 1j

# amplitudes on |000>, |001>, ..., |111>; qubit 1 is the leftmost bit
HADAMARD8_VECTORS = np.array(
    [
        [_R, 0, 0, _R, 0, 0, 0, 0],  # B1+ = |000> + |011>
        [0, 0, 0, 0, 0, _R, _R, 0],  # B1- = |101> + |110>
        [_R, 0, 0, 0, 0, _R, 0, 0],  # B2+
        [0, 0, 0, _R, 0, 0, _R, 0],  # B2-
        [_R, 0, 0, 0, 0, 0, _R, 0],  # B3+
        [0, 0, 0, _R, 0, _R, 0, 0],  # B3-
        np.array([1, 1, 1, 1, 1, 1, 1, 1]) * _Q,  # B4+
        np.array([1, -1, -1, 1, -1, 1, 1, -1]) * _Q,  # B4-
        np.array([1, -_i, -_i, 1, _i, 1, 1, _i]) * _Q,  # B5+
        np.array([1, _i, _i, 1, -_i, 1, 1, -_i]) * _Q,  # B5-
        np.array([1, -_i, _i, 1, -_i, 1, 1, _i]) * _Q,  # B6+
        np.array([1, _i, -_i, 1, _i, 1, 1, -_i]) * _Q,  # B6-
        np.array([1, _i, -_i, 1, -_i, 1, 1, _i]) * _Q,  # B7+
        np.array([1, -_i, _i, 1, _i, 1, 1, -_i]) * _Q,  # B7-
    ],
    dtype=np.complex128,
)


def hadamard8_design():
    return hadamard_design(sylvester_hadamard(3))


def hadamard8_realization() -> Realization:
    """Three-qubit realization of the (8,14,7,4,3) design from H_8.

    Block 2(i-1) is B_i^+ and block 2(i-1)+1 is B_i^-, so class i-1 is C_i.
    """
    design, res = hadamard8_design()
    return Realization(design, res, HADAMARD8_VECTORS.copy(), kind="hadamard8")


def verify_realization(real: Realization, tol: float = EPS) -> RealizationReport:
    """Literal check of the two-valued angle constraint over all block pairs."""
    g = real.gram()
    cls = np.array([real.res.class_of[i] for i in range(real.design.b)])
    par = cls[:, None] == cls[None, :]
    target = np.where(par, np.eye(len(g)), real.design.k / real.design.v)
    dev = np.abs(g - target)
    worst = None
    if dev.max() > tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        worst = (int(min(i, j)), int(max(i, j)))
    return RealizationReport(
        ok=bool(dev.max() <= tol),
        max_parallel_dev=float(dev[par].max()),
        max_nonparallel_dev=float(dev[~par].max()) if (~par).any() else 0.0,
        worst_pair=worst,
        tol=tol,
    )
