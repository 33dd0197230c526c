"""Alice's measurement bases: psi_f indexed by functions, psi_p indexed by points."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .algebra import EPS, IntegrityError, gram_deviation
from .designs import DesignParams, affine_resolvable_check
from .functions import CollisionFunction, collision_set
from .mub import MubFamily
from .realization import Realization

Label = Union[int, CollisionFunction]


@dataclass(frozen=True)
class ReconstructionBasis:
    vectors: np.ndarray  # (D, D); row i is |psi_i>
    kind: str  # "point" or "function"
    labels: tuple[Label, ...]
    alpha: float | None = None
    beta: float | None = None
    class_index: int | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class SupportTable:
    overlaps: np.ndarray  # |<psi_i|B_j>|, shape (len(basis), b)
    support: np.ndarray  # overlaps > EPS
    expected_value: float


def point_coefficients(params: DesignParams) -> tuple[float, float]:
    """(alpha, beta) = ((r-1) sqrt(k) / v, 1 / sqrt(k))."""
    return (params.r - 1) * np.sqrt(params.k) / params.v, 1 / np.sqrt(params.k)


def alpha_roots(params: DesignParams) -> tuple[float, float]:
    """Both roots (r -/+ 1) sqrt(k) / v of the quadratic for alpha.

    The larger root also gives an orthonormal set, but its vectors overlap
    blocks that miss p, so only the smaller one extracts points.
    """
    s = np.sqrt(params.k) / params.v
    return (params.r - 1) * s, (params.r + 1) * s


def phi_state(n: int) -> np.ndarray:
    """(1/sqrt n) sum_j e_j (x) e_j."""
    return np.eye(n, dtype=np.complex128).reshape(-1) / np.sqrt(n)


def psi_function_vector(mubs: MubFamily, f: CollisionFunction) -> np.ndarray:
    """psi_f = -phi + (1/sqrt n) sum_a v_{a,f(a)} (x) conj(v_{a,f(a)})."""
    n = mubs.q
    if f.n != n:
        raise ValueError(f"function on {{0..{f.n}}} does not match dimension {n}")
    vs = mubs.bases[np.arange(n + 1), np.asarray(f.values) - 1]
    gamma = np.einsum("ai,aj->ij", vs, vs.conj()).reshape(-1) / np.sqrt(n)
    return gamma - phi_state(n)


def psi_function_basis(mubs: MubFamily, fs: Sequence[CollisionFunction]) -> ReconstructionBasis:
    n = mubs.q
    if len(fs) != n * n:
        raise ValueError(f"need {n * n} functions, got {len(fs)}")
    for (i, f), (j, g) in combinations(enumerate(fs), 2):
        if len(collision_set(f, g)) != 1:
            raise ValueError(f"functions {i} and {j} have {len(collision_set(f, g))} collisions, need exactly 1")
    vecs = np.array([psi_function_vector(mubs, f) for f in fs])
    dev = gram_deviation(vecs)
    if dev > EPS:
        raise IntegrityError(f"psi_f vectors not orthonormal (deviation {dev:.3g})")
    return ReconstructionBasis(vecs, "function", tuple(fs))


def inner_product_formula_check(mubs: MubFamily, f: CollisionFunction, g: CollisionFunction) -> complex:
    """<psi_f|psi_g>, checked against (|Delta_{f,g}| - 1) / n."""
    value = complex(np.vdot(psi_function_vector(mubs, f), psi_function_vector(mubs, g)))
    expected = (len(collision_set(f, g)) - 1) / mubs.q
    if abs(value - expected) > EPS:
        raise IntegrityError(f"<psi_f|psi_g> = {value} but (|Delta|-1)/n = {expected}")
    return value


def psi_point_vectors(real: Realization, class_index: int, alpha: float, beta: float) -> np.ndarray:
    design = real.design
    class_sum = real.vectors[list(real.res.classes[class_index])].sum(axis=0)
    through = design.incidence().T.astype(np.complex128)  # (v, b)
    return -alpha * class_sum[None, :] + beta * (through @ real.vectors)


def psi_point_basis(real: Realization, class_index: int = 0) -> ReconstructionBasis:
    """psi_p = -alpha sum_{B in C} |B> + beta sum_{B ni p} |B>."""
    affine_resolvable_check(real.design, real.res)
    if not 0 <= class_index < len(real.res.classes):
        raise ValueError(f"class index {class_index} out of range")
    alpha, beta = point_coefficients(real.design.params)
    vecs = psi_point_vectors(real, class_index, alpha, beta)
    dev = gram_deviation(vecs)
    if dev > EPS:
        raise IntegrityError(f"psi_p vectors not orthonormal (deviation {dev:.3g})")
    return ReconstructionBasis(
        vecs, "point", tuple(range(real.design.v)), alpha=alpha, beta=beta, class_index=class_index
    )


def expected_support(basis: ReconstructionBasis, real: Realization) -> tuple[np.ndarray, float]:
    """Which (basis element, block) overlaps must be nonzero, and their common modulus.

    A unit |B> spread evenly over its k supporting basis elements forces the
    modulus 1/sqrt(k); for function bases k = n.
    """
    design, res = real.design, real.res
    table = np.zeros((len(basis), design.b), dtype=bool)
    if basis.kind == "point":
        for j, block in enumerate(design.blocks):
            table[list(block), j] = True
        return table, 1 / np.sqrt(design.k)
    for i, f in enumerate(basis.labels):
        for a, members in enumerate(res.classes):
            table[i, members[f(a) - 1]] = True
    return table, 1 / np.sqrt(f.n)


def extraction_support(basis: ReconstructionBasis, real: Realization) -> SupportTable:
    if basis.dim != real.dim:
        raise ValueError(f"basis dimension {basis.dim} != realization dimension {real.dim}")
    overlaps = np.abs(basis.vectors.conj() @ real.vectors.T)
    support = overlaps > EPS
    want, value = expected_support(basis, real)
    bad = np.argwhere(support != want)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        raise IntegrityError(
            f"support violation at basis element {basis.labels[i]!r}, block {j}: overlap {overlaps[i, j]:.3g}"
        )
    if np.any(np.abs(overlaps[want] - value) > EPS):
        i, j = (int(x) for x in np.argwhere(want & (np.abs(overlaps - value) > EPS))[0])
        raise IntegrityError(f"overlap {overlaps[i, j]:.6g} at ({i}, {j}) differs from {value:.6g}")
    return SupportTable(overlaps, support, float(value))


def verify_basis(basis: ReconstructionBasis, tol: float = EPS) -> float:
    """Gram deviation of the basis; IntegrityError when above ``tol`` or not square."""
    if len(basis) != basis.dim:
        raise IntegrityError(f"{len(basis)} vectors in dimension {basis.dim}")
    dev = gram_deviation(basis.vectors)
    if dev > tol:
        raise IntegrityError(f"basis not orthonormal (deviation {dev:.3g})")
    return dev
