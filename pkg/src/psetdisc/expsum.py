"""Exponential sums over p-set phase polynomials and their discrepancy bounds.

Frequency vectors live in C_s(M) = C(M)^s with C(M) = (-M/2, M/2] cap Z; the
nonzero ones form C_s*(M) and carry the weight 1/r(h), r(h) = prod max(1,|h_j|).

Three sum families are evaluated by exact modular phase accumulation (phases
are M-th roots of unity indexed by the phase polynomial mod M):

* korobov_sum        S(h) = sum_{n<M} e(2*pi*i (h_1 n + ... + h_s n^s)/M),
                     M = p or p^2.  |S| <= (s-1)*sqrt(p) for M = p and
                     |S| <= (s-1)*p for M = p^2, whenever p divides not all h_j.
* hua_wang_double_sum  sum_{a,k<p} e(2*pi*i k (h_1 + h_2 a + ... + h_s a^(s-1))/p),
                     which collapses to p * #roots of the coefficient
                     polynomial mod p; bounded by (s-1)*p for p not| gcd(h).
* niederreiter_rhs   the transference bound
                     D* <= s/M + (1/2) sum_{h in C_s*(M)} |S_P(h)|/(N r(h)),
                     for points y_n/M, evaluated exactly by full enumeration.

weighted_niederreiter_rhs is the weighted version over coordinate projections:

    max_u gamma_u |u|/M + max_u gamma_u sum_{h in C_|u|*(M)} |S_{P_u}(h)|/(N r(h)).

Note the weighted form carries no 1/2 on the sum term while the unweighted
one does; both are implemented verbatim and the discrepancy between them is
deliberate (the weighted form is the one the closed-form bounds are derived
from, and dropping the 1/2 only weakens it).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CAPS, BudgetError, Caps
from .numtheory import is_prime, poly_eval_mod
from .pointset import RationalPointSet, project
from .weights import Weights, gamma_of

_MAG_TOL = 1e-9  # float phase accumulation stays far below this at desk scale


def c_values(modulus: int) -> range:
    """C(M) = (-M/2, M/2] cap Z in ascending order."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    return range(-((modulus - 1) // 2), modulus // 2 + 1)


@dataclass(frozen=True)
class FrequencyVector:
    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        entries = tuple(int(h) for h in self.entries)
        if not entries:
            raise ValueError("frequency vector must have dimension >= 1")
        rng = c_values(self.modulus)
        if any(h < rng.start or h >= rng.stop for h in entries):
            raise ValueError(f"entries {entries} not all in C({self.modulus})")
        object.__setattr__(self, "entries", entries)

    @property
    def r(self) -> int:
        return math.prod(max(1, abs(h)) for h in self.entries)

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class ExpSumValue:
    value: complex
    terms: int

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def _entries(h) -> tuple[int, ...]:
    if isinstance(h, FrequencyVector):
        return h.entries
    return tuple(int(v) for v in h)


def _roots_of_unity(m: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


def korobov_sum(h, p: int, modulus_power: int = 1) -> ExpSumValue:
    """sum_{n=0}^{M-1} e(2*pi*i (h_1 n + h_2 n^2 + ... + h_s n^s)/M), M = p^power."""
    hs = _entries(h)
    if modulus_power not in (1, 2):
        raise ValueError(f"modulus_power must be 1 or 2, got {modulus_power}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    m = p ** modulus_power
    n = np.arange(m, dtype=np.int64)
    phase = np.zeros(m, dtype=np.int64)
    power = np.ones(m, dtype=np.int64)
    for hj in hs:
        power = power * n % m
        phase = (phase + hj % m * power) % m
    value = complex(_roots_of_unity(m)[phase].sum())
    return ExpSumValue(value=value, terms=m)


def hua_wang_root_count(h, p: int) -> int:
    """#{a in [0,p): h_1 + h_2 a + ... + h_s a^(s-1) == 0 mod p}."""
    hs = _entries(h)
    return sum(1 for a in range(p) if poly_eval_mod(hs, a, p) == 0)


def hua_wang_double_sum(h, p: int) -> ExpSumValue:
    """sum_{a,k=0}^{p-1} e(2*pi*i k (h_1 + h_2 a + ... + h_s a^(s-1))/p).

    The inner k-sum is p when the coefficient polynomial vanishes at a and 0
    otherwise, so the value is exactly p * (number of roots mod p).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    count = hua_wang_root_count(h, p)
    return ExpSumValue(value=complex(p * count), terms=p * p)


@dataclass(frozen=True)
class WeilCheckReport:
    lemma: int
    p: int
    s: int
    bound: float
    max_ratio: float
    worst_h: tuple[int, ...]
    max_magnitude: float
    n_checked: int
    exhaustive: bool
    seed: int
    violations: int  # magnitudes above bound + tolerance


def _power_matrix(m: int, s: int, first_power: int) -> np.ndarray:
    """(m, s) matrix with column j = n^(first_power+j) mod m."""
    n = np.arange(m, dtype=np.int64)
    out = np.empty((m, s), dtype=np.int64)
    power = np.ones(m, dtype=np.int64)
    for _ in range(first_power):
        power = power * n % m
    for j in range(s):
        out[:, j] = power
        power = power * n % m
    return out


def _magnitudes(h_block: np.ndarray, basis: np.ndarray, m: int,
                roots: np.ndarray) -> np.ndarray:
    phase = h_block @ basis.T % m
    return np.abs(roots[phase].sum(axis=1))


def weil_bound_check(lemma: int, p: int, s: int, cap: int = 10**7,
                     seed: int = 0) -> WeilCheckReport:
    """Sweep the admissible frequency vectors of one exponential-sum bound.

    lemma 3: |korobov_sum(h, p, 1)| <= (s-1)*sqrt(p) for h in C_s*(p);
    lemma 5: |korobov_sum(h, p, 2)| <= (s-1)*p for h in C_s*(p^2), p not| some h_j;
    lemma 6: |hua_wang_double_sum(h, p)| <= (s-1)*p for h in C_s*(p).

    Exhaustive when the admissible count is within cap, otherwise a seeded
    uniform sample of cap vectors.  Reports the worst magnitude/bound ratio
    and the first h attaining it in enumeration order.
    """
    if lemma not in (3, 5, 6):
        raise ValueError(f"lemma must be 3, 5 or 6, got {lemma}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    m = p * p if lemma == 5 else p
    if lemma == 3:
        bound = (s - 1) * math.sqrt(p)
    else:
        bound = float((s - 1) * p)
    n_admissible = m ** s - (p ** s if lemma == 5 else 1)
    exhaustive = n_admissible <= cap

    if lemma == 6:
        basis = _power_matrix(p, s, first_power=0)  # columns 1, a, ..., a^(s-1)
        roots = None
    else:
        basis = _power_matrix(m, s, first_power=1)  # columns n, n^2, ..., n^s
        roots = _roots_of_unity(m)

    def block_mags(block: np.ndarray) -> np.ndarray:
        if lemma == 6:
            phase = block @ basis.T % p
            return p * (phase == 0).sum(axis=1).astype(np.float64)
        return _magnitudes(block, basis, m, roots)

    max_ratio = -1.0
    worst: tuple[int, ...] = ()
    max_mag = 0.0
    n_checked = 0
    violations = 0

    def admissible(block: np.ndarray) -> np.ndarray:
        if lemma == 5:
            return ~np.all(block % p == 0, axis=1)
        return np.any(block != 0, axis=1)

    def consume(block: np.ndarray):
        nonlocal max_ratio, worst, max_mag, n_checked, violations
        keep = admissible(block)
        block = block[keep]
        if not len(block):
            return
        mags = block_mags(block)
        n_checked += len(block)
        violations += int((mags > bound + _MAG_TOL).sum())
        max_mag = max(max_mag, float(mags.max()))
        if bound > 0:
            ratios = mags / bound
        else:
            ratios = np.where(mags <= _MAG_TOL, 0.0, np.inf)
        i = int(np.argmax(ratios))
        if float(ratios[i]) > max_ratio:
            max_ratio = float(ratios[i])
            worst = tuple(int(v) for v in block[i])

    block_size = 4096
    if exhaustive:
        buf = []
        for h in itertools.product(c_values(m), repeat=s):
            buf.append(h)
            if len(buf) == block_size:
                consume(np.array(buf, dtype=np.int64))
                buf = []
        if buf:
            consume(np.array(buf, dtype=np.int64))
    else:
        rng = np.random.default_rng(seed)
        lo = -((m - 1) // 2)
        remaining = cap
        while remaining > 0:
            b = min(block_size, remaining)
            consume(rng.integers(lo, m // 2 + 1, size=(b, s), dtype=np.int64))
            remaining -= b

    return WeilCheckReport(lemma=lemma, p=p, s=s, bound=bound,
                           max_ratio=max_ratio, worst_h=worst,
                           max_magnitude=max_mag, n_checked=n_checked,
                           exhaustive=exhaustive, seed=seed,
                           violations=violations)


def _freq_iter_blocks(m: int, d: int, block_size: int = 4096):
    """C_d*(M) in ascending mixed-radix order, as int64 blocks."""
    buf = []
    for h in itertools.product(c_values(m), repeat=d):
        if not any(h):
            continue
        buf.append(h)
        if len(buf) == block_size:
            yield np.array(buf, dtype=np.int64)
            buf = []
    if buf:
        yield np.array(buf, dtype=np.int64)


def _rhs_sum_term(numerators: np.ndarray, m: int) -> float:
    """sum over h in C_d*(M) of |N^-1 sum_n e(2 pi i h.y_n / M)| / r(h)."""
    n_pts = len(numerators)
    roots = _roots_of_unity(m)
    total = 0.0
    for block in _freq_iter_blocks(m, numerators.shape[1]):
        phase = block @ numerators.T % m
        inner = np.abs(roots[phase].sum(axis=1)) / n_pts
        r = np.prod(np.maximum(1, np.abs(block)), axis=1).astype(np.float64)
        total += float((inner / r).sum())
    return total


def niederreiter_rhs(ps: RationalPointSet, caps: Caps = DEFAULT_CAPS) -> float:
    """Exact transference bound s/M + (1/2) sum_{h} |S(h)|/(N r(h)) >= D*."""
    m, s = ps.modulus, ps.dim
    if m < 2:
        raise ValueError("modulus must be >= 2 for the frequency spectrum")
    n_freq = m ** s - 1
    if n_freq > caps.max_freq_vectors:
        raise BudgetError(f"{n_freq} frequency vectors exceed cap "
                          f"{caps.max_freq_vectors}")
    return s / m + 0.5 * _rhs_sum_term(ps.numerators, m)


@dataclass(frozen=True)
class WeightedRhsResult:
    value: float
    point_term: float
    point_subset: tuple[int, ...]
    sum_term: float
    sum_subset: tuple[int, ...]


def weighted_niederreiter_rhs(ps: RationalPointSet, w: Weights,
                              caps: Caps = DEFAULT_CAPS) -> WeightedRhsResult:
    """Weighted transference bound over coordinate projections.

    value = max_u gamma_u |u|/M + max_u gamma_u sum_{h in C_|u|*(M)} |S_u(h)|/(N r(h));
    the two maxima may be attained at different subsets, both are reported.
    Zero-weight subsets are skipped.
    """
    from .discrepancy import _enumerate_subsets  # shared deterministic order

    m = ps.modulus
    if m < 2:
        raise ValueError("modulus must be >= 2 for the frequency spectrum")
    subsets = _enumerate_subsets(ps, w, caps)
    total_freq = sum(m ** len(u) - 1 for u in subsets)
    if total_freq > caps.max_freq_vectors:
        raise BudgetError(f"{total_freq} frequency vectors exceed cap "
                          f"{caps.max_freq_vectors}")
    point_term, point_subset = 0.0, ()
    sum_term, sum_subset = 0.0, ()
    for u in subsets:
        g = gamma_of(w, u)
        v1 = g * len(u) / m
        if v1 > point_term:
            point_term, point_subset = v1, u
        v2 = g * _rhs_sum_term(project(ps, u).numerators, m)
        if v2 > sum_term:
            sum_term, sum_subset = v2, u
    return WeightedRhsResult(value=point_term + sum_term,
                             point_term=point_term, point_subset=point_subset,
                             sum_term=sum_term, sum_subset=sum_subset)
