"""Complete sets of q+1 mutually unbiased bases of C^q."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import field_of_order, prime_power


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class MubFamily:
    """``bases[a][b]`` is the vector v_{a,b} (0-indexed b)."""

    q: int
    bases: np.ndarray  # shape (q+1, q, q)

    def vec(self, a: int, b: int) -> np.ndarray:
        return self.bases[a, b]

    def __len__(self) -> int:
        return len(self.bases)


@dataclass(frozen=True)
class MubReport:
    ok: bool
    max_orthonormal_dev: float
    max_unbiased_dev: float
    worst_pair: tuple[int, int] | None  # (a, a') of the worst deviation, None if all clean
    tol: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_orthonormal_dev, self.max_unbiased_dev)


def _pauli_bases() -> np.ndarray:
    s = 1 / np.sqrt(2)
    z = [[1, 0], [0, 1]]
    x = [[s, s], [s, -s]]
    y = [[s, 1j * s], [s, -1j * s]]
    return np.array([z, x, y], dtype=np.complex128)


def mub_build(q: int) -> MubFamily:
    """Computational basis plus q quadratic-phase bases.

    For q = 2 the bases are the sigma_z, sigma_x, sigma_y eigenbases. For odd
    q = p^m, basis a (1 <= a <= q) has entries
    ``omega_p ** tr(c*x^2 + b*x) / sqrt(q)`` where c is the field element with
    index ``a mod q`` and x runs over the field in index order.
    """
    if q == 2:
        return MubFamily(2, _pauli_bases())
    try:
        p, _ = prime_power(q)
    except ValueError:
        raise UnsupportedDimension(f"q={q} is not a prime power") from None
    if p == 2:
        raise UnsupportedDimension(f"q={q}: even prime powers above 2 are not supported")
    if q > 81:
        raise UnsupportedDimension(f"q={q} exceeds the supported range (<= 81)")
    F = field_of_order(q)
    add, mul, tr = F.add_table, F.mul_table, F.trace_table
    x = np.arange(q)
    x2 = mul[x, x]
    omega = np.exp(2j * np.pi / p)
    bases = np.zeros((q + 1, q, q), dtype=np.complex128)
    bases[0] = np.eye(q)
    for a in range(1, q + 1):
        c = a % q
        quad = mul[c, x2]  # c * x^2 for each x
        for b in range(q):
            exps = tr[add[quad, mul[b, x]]]
            bases[a, b] = omega**exps / np.sqrt(q)
    return MubFamily(q, bases)


def verify_mub(family: MubFamily, tol: float = 1e-9) -> MubReport:
    q = family.q
    flat = family.bases.reshape(-1, q)
    gram = np.abs(flat.conj() @ flat.T) ** 2
    n = len(family)
    label = np.repeat(np.arange(n), q)
    same = label[:, None] == label[None, :]
    ortho_dev = np.where(same, np.abs(gram - np.eye(len(flat))), 0.0)
    unb_dev = np.where(~same, np.abs(gram - 1 / q), 0.0)
    worst = None
    dev = np.maximum(ortho_dev, unb_dev)
    if dev.max() > tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        worst = tuple(sorted((int(label[i]), int(label[j]))))
    return MubReport(
        ok=bool(dev.max() <= tol),
        max_orthonormal_dev=float(ortho_dev.max()),
        max_unbiased_dev=float(unb_dev.max()) if n > 1 else 0.0,
        worst_pair=worst,
        tol=tol,
    )


def maximally_entangled(family: MubFamily, a: int) -> np.ndarray:
    """(1/sqrt q) sum_b v_{a,b} (x) conj(v_{a,b})."""
    vs = family.bases[a]
    return np.einsum("bi,bj->ij", vs, vs.conj()).reshape(-1) / np.sqrt(family.q)
