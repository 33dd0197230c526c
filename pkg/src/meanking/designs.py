"""Block designs: verification, resolutions, affine planes and Hadamard designs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import field_of_order, gaussian_binomial, prime_power


class DesignError(ValueError):
    """Raised when a block list fails a design property."""


class NotResolvableError(DesignError):
    pass


class NotAffineError(DesignError):
    pass


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lam: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.b, self.r, self.k, self.lam)

    def as_dict(self) -> dict[str, int]:
        return {"v": self.v, "b": self.b, "r": self.r, "k": self.k, "lambda": self.lam}


@dataclass(frozen=True)
class IncidenceDesign:
    v: int
    blocks: tuple[tuple[int, ...], ...]
    params: DesignParams

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return self.params.k

    def incidence(self) -> np.ndarray:
        """b x v 0/1 matrix."""
        n = np.zeros((self.b, self.v), dtype=np.int64)
        for i, block in enumerate(self.blocks):
            n[i, list(block)] = 1
        return n

    def blocks_through(self, p: int) -> list[int]:
        return [i for i, block in enumerate(self.blocks) if p in block]


@dataclass(frozen=True)
class Resolution:
    classes: tuple[tuple[int, ...], ...]
    class_of: dict[int, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.class_of:
            mapping = {blk: c for c, members in enumerate(self.classes) for blk in members}
            object.__setattr__(self, "class_of", mapping)

    def parallel(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]


@dataclass(frozen=True)
class AffineResolvableReport:
    m: int
    intersection_constant: bool
    rel_m: bool  # m = k^2 / v
    rel_lambda: bool  # lambda (v - k) = k (k - 1)
    rel_r: bool  # r = k + lambda
    rel_b: bool  # b = v + r - 1

    @property
    def ok(self) -> bool:
        return self.intersection_constant and self.rel_m and self.rel_lambda and self.rel_r and self.rel_b


def verify_design(v: int, blocks: Sequence[Sequence[int]]) -> IncidenceDesign:
    """Check uniform block size, replication and pair coverage; return the design."""
    if not blocks:
        raise DesignError("no blocks")
    norm = []
    for i, block in enumerate(blocks):
        pts = sorted(int(x) for x in block)
        if len(set(pts)) != len(pts):
            raise DesignError(f"block {i} repeats a point")
        if pts and (pts[0] < 0 or pts[-1] >= v):
            raise DesignError(f"block {i} has a point outside 0..{v - 1}")
        norm.append(tuple(pts))
    sizes = {len(b) for b in norm}
    if len(sizes) != 1:
        i = next(i for i, b in enumerate(norm) if len(b) != len(norm[0]))
        raise DesignError(f"non-uniform block size: block 0 has {len(norm[0])}, block {i} has {len(norm[i])}")
    k = sizes.pop()
    inc = np.zeros((len(norm), v), dtype=np.int64)
    for i, block in enumerate(norm):
        inc[i, list(block)] = 1
    reps = inc.sum(axis=0)
    if np.any(reps != reps[0]):
        p = int(np.flatnonzero(reps != reps[0])[0])
        raise DesignError(f"non-uniform replication: point 0 in {reps[0]} blocks, point {p} in {reps[p]}")
    r = int(reps[0])
    pairs = inc.T @ inc
    off = pairs[~np.eye(v, dtype=bool)]
    lam = int(off[0]) if v > 1 else 0
    if np.any(off != lam):
        bad = np.argwhere((pairs != lam) & ~np.eye(v, dtype=bool))[0]
        raise DesignError(
            f"non-uniform pair coverage: pair (0,1) in {lam} blocks, pair {tuple(int(x) for x in bad)} in {pairs[tuple(bad)]}"
        )
    b = len(norm)
    if k > 1 and r * (k - 1) != (v - 1) * lam:
        raise DesignError(f"r(k-1) = {r * (k - 1)} != (v-1)lambda = {(v - 1) * lam}")
    if b * k != v * r:
        raise DesignError(f"bk = {b * k} != vr = {v * r}")
    return IncidenceDesign(v, tuple(norm), DesignParams(v, b, r, k, lam))


def verify_resolution(design: IncidenceDesign, classes: Sequence[Sequence[int]]) -> Resolution:
    seen = sorted(i for c in classes for i in c)
    if seen != list(range(design.b)):
        raise NotResolvableError("classes do not partition the block list")
    for ci, members in enumerate(classes):
        covered = sorted(p for i in members for p in design.blocks[i])
        if covered != list(range(design.v)):
            raise NotResolvableError(f"class {ci} is not a partition of the point set")
    return Resolution(tuple(tuple(int(i) for i in c) for c in classes))


def find_resolution(design: IncidenceDesign) -> Resolution:
    """Deterministic backtracking search for a partition into parallel classes.

    Each step opens a class at the lowest unassigned block and completes it
    by repeatedly covering the lowest uncovered point, trying blocks in
    index order.
    """
    v, k = design.v, design.k
    if v % k:
        raise NotResolvableError(f"not resolvable: v={v} is not divisible by k={k}")
    masks = [sum(1 << p for p in blk) for blk in design.blocks]
    full = (1 << v) - 1
    unused = [True] * design.b
    classes: list[list[int]] = []

    def complete(current: list[int], covered: int) -> bool:
        if covered == full:
            classes.append(list(current))
            if solve():
                return True
            classes.pop()
            return False
        # the next block must cover the lowest uncovered point
        low = (~covered & (covered + 1)).bit_length() - 1
        for i in range(design.b):
            if unused[i] and masks[i] & covered == 0 and masks[i] >> low & 1:
                unused[i] = False
                current.append(i)
                if complete(current, covered | masks[i]):
                    return True
                current.pop()
                unused[i] = True
        return False

    def solve() -> bool:
        try:
            first = unused.index(True)
        except ValueError:
            return True
        unused[first] = False
        if complete([first], masks[first]):
            return True
        unused[first] = True
        return False

    if not solve():
        raise NotResolvableError("not resolvable: backtracking exhausted")
    return Resolution(tuple(tuple(sorted(c)) for c in classes))


def affine_plane(q: int) -> tuple[IncidenceDesign, Resolution]:
    """AG(2, q) with point (x, y) at index x*q + y.

    Class 0 holds the vertical lines x = c; class 1 + s holds the lines of
    slope s (field element index s), each class ordered by intercept.
    """
    F = field_of_order(q)
    els = F.elements()
    blocks: list[tuple[int, ...]] = []
    classes: list[tuple[int, ...]] = []
    blocks.extend(tuple(x * q + y for y in range(q)) for x in range(q))
    classes.append(tuple(range(q)))
    for s in els:
        start = len(blocks)
        for t in els:
            blocks.append(tuple(sorted(x.value * q + (s * x + t).value for x in els)))
        classes.append(tuple(range(start, start + q)))
    design = verify_design(q * q, blocks)
    return design, verify_resolution(design, classes)


def plane_point_label(p: int, q: int) -> tuple[int, int]:
    """1-indexed (x, y) pair used for printing plane points."""
    return (p // q + 1, p % q + 1)


def sylvester_hadamard(k: int) -> np.ndarray:
    if k < 1 or 2**k > 64:
        raise ValueError("need 1 <= k with 2**k <= 64")
    h2 = np.array([[1, 1], [1, -1]], dtype=np.int64)
    h = h2
    for _ in range(k - 1):
        h = np.kron(h, h2)
    return h


def is_hadamard(h: np.ndarray) -> bool:
    h = np.asarray(h)
    n = h.shape[0]
    return h.shape == (n, n) and bool(np.all(np.abs(h) == 1)) and bool(np.array_equal(h @ h.T, n * np.eye(n, dtype=h.dtype)))


def hadamard_design(h: np.ndarray) -> tuple[IncidenceDesign, Resolution]:
    """Affine (n, 2n-2, n-1, n/2, n/2-1) design read off the rows of ``h``.

    Points are the columns (0-indexed). For every row but the first, the
    '+' positions then the '-' positions form two parallel blocks.
    """
    h = np.asarray(h, dtype=np.int64)
    if not is_hadamard(h):
        raise DesignError("matrix is not Hadamard (H H^t != n I)")
    h = h * h[0]  # normalize first row to all ones by column negation
    n = h.shape[0]
    blocks = []
    classes = []
    for row in h[1:]:
        classes.append((len(blocks), len(blocks) + 1))
        blocks.append(tuple(int(j) for j in np.flatnonzero(row == 1)))
        blocks.append(tuple(int(j) for j in np.flatnonzero(row == -1)))
    design = verify_design(n, blocks)
    return design, verify_resolution(design, classes)


def intersection_sizes(design: IncidenceDesign) -> np.ndarray:
    inc = design.incidence()
    return inc @ inc.T


def affine_resolvable_check(design: IncidenceDesign, res: Resolution) -> AffineResolvableReport:
    """Nonparallel blocks must meet in a constant number m of points."""
    sizes = intersection_sizes(design)
    cls = np.array([res.class_of[i] for i in range(design.b)])
    nonpar = cls[:, None] != cls[None, :]
    values = np.unique(sizes[nonpar])
    if len(values) != 1:
        i, j = (int(x) for x in np.argwhere(nonpar & (sizes != sizes[nonpar][0]))[0])
        raise NotAffineError(
            f"not affine: nonparallel blocks {i},{j} meet in {sizes[i, j]} points, others in {sizes[nonpar][0]}"
        )
    m = int(values[0])
    v, b, r, k, lam = design.params.as_tuple()
    return AffineResolvableReport(
        m=m,
        intersection_constant=True,
        rel_m=m * v == k * k,
        rel_lambda=lam * (v - k) == k * (k - 1),
        rel_r=r == k + lam,
        rel_b=b == v + r - 1,
    )


def parallel_block_through(design: IncidenceDesign, res: Resolution, block: int, p: int) -> int:
    """The unique block parallel to ``block`` that contains point ``p``."""
    if p in design.blocks[block]:
        raise DesignError(f"point {p} lies on block {block}")
    for c in res.classes[res.class_of[block]]:
        if p in design.blocks[c]:
            return c
    raise DesignError(f"class of block {block} does not cover point {p}")


def block_containing(design: IncidenceDesign, res: Resolution, class_index: int, p: int) -> int:
    for c in res.classes[class_index]:
        if p in design.blocks[c]:
            return c
    raise DesignError(f"class {class_index} does not cover point {p}")


def affine_space_parameters(m: int, d: int, q: int) -> DesignParams:
    """Parameters of the design of d-flats in AG(m, q)."""
    if not 1 <= d < m:
        raise ValueError(f"need 1 <= d < m, got m={m}, d={d}")
    prime_power(q)
    r = gaussian_binomial(m, d, q)
    return DesignParams(
        v=q**m,
        b=q ** (m - d) * r,
        r=r,
        k=q**d,
        lam=gaussian_binomial(m - 1, d - 1, q),
    )
