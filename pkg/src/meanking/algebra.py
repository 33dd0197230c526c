"""Finite fields, complex vector primitives and q-binomial counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

EPS = 1e-9
FIELD_ORDER_CAP = 256


class IntegrityError(RuntimeError):
    """A numerical or combinatorial identity that must hold did not."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


# --- polynomials over GF(p), coefficient lists low -> high ---------------


def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    inv_lead = pow(mod[-1], p - 2, p)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and any(a):
        _poly_trim(a)
        if len(a) - 1 < dm:
            break
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a.pop()
    return _poly_trim(a) if a else [0]


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly[0] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def _digits(value: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        value, c = divmod(value, p)
        out.append(c)
    return tuple(out)


def _undigits(coeffs: Sequence[int], p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


class FiniteField:
    """GF(p^m) with elements encoded as integers ``sum(c_i * p**i)``.

    The integer encoding doubles as the canonical enumeration order of the
    field, and the modulus is the monic irreducible of degree ``m`` whose
    lower coefficients have the smallest such encoding.
    """

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p**m > FIELD_ORDER_CAP:
            raise ValueError(f"field order {p**m} exceeds cap {FIELD_ORDER_CAP}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = self._smallest_irreducible()
        self._build_tables()

    def _smallest_irreducible(self) -> tuple[int, ...]:
        for low in range(self.p**self.m):
            poly = list(_digits(low, self.p, self.m)) + [1]
            if is_irreducible(poly, self.p):
                return tuple(poly)
        raise IntegrityError(f"no irreducible of degree {self.m} over GF({self.p})")

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        digits = np.array([_digits(v, p, m) for v in range(q)], dtype=np.int64)
        weights = p ** np.arange(m, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = summed @ weights
        self.neg_table = ((-digits) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = digits[a].tolist()
            for b in range(a, q):
                prod = _poly_mod(_poly_mul(da, digits[b].tolist(), p), self.modulus, p)
                mul[a, b] = mul[b, a] = _undigits(prod, p)
        self.mul_table = mul
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv_table[a] = int(np.flatnonzero(mul[a] == 1)[0])
        frob = np.arange(q)
        trace = np.zeros(q, dtype=np.int64)
        for _ in range(m):
            trace = self.add_table[trace, frob]
            frob = self._power_map(frob, p)
        self.trace_table = trace

    def _power_map(self, values: np.ndarray, e: int) -> np.ndarray:
        out = np.ones_like(values)
        for _ in range(e):
            out = self.mul_table[out, values]
        return out

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.q:
                raise ValueError(f"{value} is not an element index of {self}")
            return FieldElement(self, value)
        coeffs = [int(c) % self.p for c in value]
        return FieldElement(self, _undigits(_poly_mod(coeffs, self.modulus, self.p), self.p))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def trace(self, a: FieldElement) -> int:
        """Absolute trace into the prime field, returned as an int in [0, p)."""
        return int(self.trace_table[a.value])


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)


def field_of_order(q: int) -> FiniteField:
    return field_create(*prime_power(q))


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return _digits(self.value, self.field.p, self.field.m)

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"mismatched fields {self.field} and {other.field}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, int(self.field.add_table[self.value, other.value]))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, int(self.field.neg_table[self.value]))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, int(self.field.mul_table[self.value, other.value]))

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(self.field, int(self.field.inv_table[self.value]))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> FieldElement:
        base = self if e >= 0 else self.inverse()
        out = self.field.one
        for _ in range(abs(e)):
            out = out * base
        return out

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def gaussian_binomial(m: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of GF(q)^m."""
    if d < 0 or d > m:
        raise ValueError(f"need 0 <= d <= m, got m={m}, d={d}")
    if q < 2:
        raise ValueError("q must be >= 2")
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (d - i) - 1
    return num // den


# --- complex vectors ----------------------------------------------------


def as_vec(v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    return arr


def inner_product(u, v) -> complex:
    """<u|v>, conjugate-linear in ``u``."""
    u, v = as_vec(u), as_vec(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch {u.shape[0]} vs {v.shape[0]}")
    return complex(np.vdot(u, v))


def conjugate_vec(v) -> np.ndarray:
    return np.conj(as_vec(v))


def tensor(u, v) -> np.ndarray:
    # left factor is the high-order index
    return np.kron(as_vec(u), as_vec(v))


def basis_vector(d: int, j: int) -> np.ndarray:
    e = np.zeros(d, dtype=np.complex128)
    e[j] = 1.0
    return e


def gram_deviation(vectors: np.ndarray) -> float:
    """max |<v_i|v_j> - delta_ij| over rows of ``vectors``."""
    g = vectors.conj() @ vectors.T
    return float(np.max(np.abs(g - np.eye(len(vectors)))))


def close(a, b, tol: float = EPS) -> bool:
    return bool(np.all(np.abs(np.asarray(a) - np.asarray(b)) <= tol))


def to_pairs(v) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in as_vec(v)]


def from_pairs(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]
