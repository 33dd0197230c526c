"""Collision functions {0..n} -> {1..n} derived from an affine plane."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import isqrt

from .designs import DesignError, IncidenceDesign, Resolution


@dataclass(frozen=True)
class CollisionFunction:
    values: tuple[int, ...]  # values[a] = f(a), each in 1..n
    label: tuple[int, int] | None = field(default=None, compare=False)  # (class i, block index of the line)

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __call__(self, a: int) -> int:
        return self.values[a]

    def __post_init__(self):
        n = len(self.values) - 1
        if n < 1 or any(not 1 <= x <= n for x in self.values):
            raise ValueError(f"values {self.values} must lie in 1..{n}")


def functions_from_plane(plane: IncidenceDesign, res: Resolution) -> list[CollisionFunction]:
    """The n^2 functions f_{i,l}: f(0) = i, f(a) = y where l meets vertical line a at (a, y).

    Points are indexed x*n + y (0-based), so vertical line a (1-based) is
    {(a-1)*n + y}. Class 0 of ``res`` must consist of exactly these lines.
    """
    n = isqrt(plane.v)
    if n * n != plane.v or len(res.classes) != n + 1:
        raise DesignError("not an affine plane: expected n^2 points and n+1 classes")
    verticals = {tuple(range(x * n, x * n + n)) for x in range(n)}
    if {plane.blocks[j] for j in res.classes[0]} != verticals:
        raise DesignError("resolution class 0 is not the vertical-line class")
    out = []
    for i in range(1, n + 1):
        for line in res.classes[i]:
            vals = [i] + [0] * n
            for p in plane.blocks[line]:
                vals[p // n + 1] = p % n + 1
            out.append(CollisionFunction(tuple(vals), label=(i, line)))
    return out


def collision_set(f: CollisionFunction, g: CollisionFunction) -> set[int]:
    if f.n != g.n:
        raise ValueError(f"domain mismatch: {f.n + 1} vs {g.n + 1}")
    return {a for a, (x, y) in enumerate(zip(f.values, g.values)) if x == y}


def all_functions(n: int) -> list[CollisionFunction]:
    """Every function {0..n} -> {1..n}, in lexicographic order of value tables."""
    return [CollisionFunction(vals) for vals in product(range(1, n + 1), repeat=n + 1)]
