"""The three p-set families as exact rational point multisets.

All point sets live in [0,1)^s with coordinates n/M stored as integer
numerators over a common modulus M, never as floats: the exact-discrepancy
corner scan and the exponential sums both need exact coordinate identity.

Families (p prime):

* Korobov P:  x_n = ({n/p}, {n^2/p}, ..., {n^s/p}),        n = 0..p-1
* Korobov Q:  x_n = ({n/p^2}, {n^2/p^2}, ..., {n^s/p^2}),  n = 0..p^2-1
* Hua-Wang R: x_{a,k} = ({k/p}, {ak/p}, ..., {a^(s-1)k/p}), a,k = 0..p-1

R is a multiset (the union of all modulus-p Korobov lattices); duplicate
points are kept everywhere with multiplicity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CAPS, BudgetError, Caps
from .numtheory import is_prime


class PSetKind(enum.Enum):
    KOROBOV_P = "P"
    KOROBOV_Q = "Q"
    HUA_WANG_R = "R"

    def point_count(self, p: int) -> int:
        return p if self is PSetKind.KOROBOV_P else p * p

    def modulus(self, p: int) -> int:
        return p * p if self is PSetKind.KOROBOV_Q else p


@dataclass(frozen=True, eq=False)
class RationalPointSet:
    """Multiset of points numerators[i]/modulus in [0,1)^dim."""

    modulus: int
    dim: int
    numerators: np.ndarray  # (n, dim) int64, read-only
    kind: PSetKind | None = None

    def __post_init__(self):
        arr = np.ascontiguousarray(self.numerators, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise ValueError(f"numerators must be (n, {self.dim}), got {arr.shape}")
        if self.modulus < 1 or self.dim < 1:
            raise ValueError("modulus and dim must be positive")
        if arr.size and (arr.min() < 0 or arr.max() >= self.modulus):
            raise ValueError("numerators must lie in [0, modulus)")
        if self.kind is not None:
            if len(arr) != self.kind.point_count(self._p_of_kind(arr)):
                raise ValueError(f"point count {len(arr)} inconsistent with kind {self.kind}")
        arr.setflags(write=False)
        object.__setattr__(self, "numerators", arr)

    def _p_of_kind(self, arr: np.ndarray) -> int:
        # recover p from (kind, modulus): M = p for P/R, M = p^2 for Q
        if self.kind is PSetKind.KOROBOV_Q:
            p = round(self.modulus ** 0.5)
            if p * p != self.modulus:
                raise ValueError("Korobov Q modulus must be a perfect square")
            return p
        return self.modulus

    @property
    def n(self) -> int:
        return len(self.numerators)

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self.numerators]

    def coords_float(self) -> np.ndarray:
        return self.numerators / float(self.modulus)


def generate(kind: PSetKind, p: int, s: int,
             caps: Caps = DEFAULT_CAPS) -> RationalPointSet:
    """Construct one of the three p-set families exactly."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if s < 1:
        raise ValueError(f"dimension must be >= 1, got {s}")
    n_points = kind.point_count(p)
    if n_points * s > caps.max_point_entries:
        raise BudgetError(
            f"{n_points} points x {s} dims exceeds cap of "
            f"{caps.max_point_entries} entries")
    m = kind.modulus(p)
    out = np.empty((n_points, s), dtype=np.int64)
    if kind in (PSetKind.KOROBOV_P, PSetKind.KOROBOV_Q):
        n = np.arange(n_points, dtype=np.int64)
        power = np.ones(n_points, dtype=np.int64)
        for j in range(s):
            power = power * n % m
            out[:, j] = power
    else:  # Hua-Wang R: rows ordered (a=0,k=0..p-1), (a=1,k=0..p-1), ...
        a = np.repeat(np.arange(p, dtype=np.int64), p)
        k = np.tile(np.arange(p, dtype=np.int64), p)
        a_power = np.ones(n_points, dtype=np.int64)
        for j in range(s):
            out[:, j] = a_power * k % m
            a_power = a_power * a % m
    return RationalPointSet(modulus=m, dim=s, numerators=out, kind=kind)


def project(ps: RationalPointSet, u) -> RationalPointSet:
    """Keep the coordinates with (1-based) indices in u; multiset preserved."""
    idx = sorted(set(int(j) for j in u))
    if not idx:
        raise ValueError("projection subset must be nonempty")
    if idx[0] < 1 or idx[-1] > ps.dim:
        raise ValueError(f"subset {idx} out of range for dimension {ps.dim}")
    cols = [j - 1 for j in idx]
    return RationalPointSet(modulus=ps.modulus, dim=len(cols),
                            numerators=ps.numerators[:, cols], kind=None)
