"""Exact local, star, and weighted star discrepancy of rational point multisets.

The star discrepancy sup over anchored boxes [0, z) is attained on the
critical-corner grid: with C_j the distinct j-th coordinates of the points,

    D* = max over y in prod_j (C_j + {1}) of
         max( A_closed(y)/N - vol(y),  vol(y) - A_open(y)/N )

where A_closed counts points with x_j <= y_j in every coordinate and A_open
counts x_j < y_j strictly (the closed branch is the one-sided limit of the
local discrepancy as boxes shrink to y from above).  Coordinates are integer
numerators over the common modulus M, so every corner value is the exact
rational (A*M^s - N*volnum) / (N*M^s) and the scan compares integers only;
no floating point enters the maximization.

The scan is depth-first over dimensions with incremental point filtering;
the innermost dimension is vectorized.  When N*M^s does not fit comfortably
in int64 the same scan runs on Python big integers instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import DEFAULT_CAPS, BudgetError, Caps
from .pointset import RationalPointSet, project
from .weights import ProductWeights, Weights, gamma_of

# upper corner of an anchored box; entries in [0, 1] as float/int/Fraction
Box = Sequence

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class DiscrepancyResult:
    value: float
    exact: Fraction
    witness: tuple[Fraction, ...]
    side: str  # "closed" | "open"
    corners_scanned: int


@dataclass(frozen=True)
class WeightedDiscrepancyResult:
    value: float
    subset: tuple[int, ...]
    witness: tuple[Fraction, ...]  # full-dimension box, free coordinates at 1
    side: str
    per_subset: dict[tuple[int, ...], float]


def _box_fractions(ps: RationalPointSet, z: Box) -> list[Fraction]:
    if len(z) != ps.dim:
        raise ValueError(f"box has {len(z)} coordinates, point set has {ps.dim}")
    out = []
    for v in z:
        f = Fraction(v)
        if not 0 <= f <= 1:
            raise ValueError(f"box coordinate {v} outside [0, 1]")
        out.append(f)
    return out


def box_counts(ps: RationalPointSet, z: Box) -> tuple[int, int]:
    """(strict, closed) numbers of points in [0, z) and [0, z], multiset."""
    fz = _box_fractions(ps, z)
    m = ps.modulus
    # numerator n satisfies n/M < z  iff  n <= ceil(z*M) - 1
    strict_hi = np.array([math.ceil(f * m) - 1 for f in fz], dtype=np.int64)
    closed_hi = np.array([math.floor(f * m) for f in fz], dtype=np.int64)
    pts = ps.numerators
    n_strict = int(np.all(pts <= strict_hi, axis=1).sum())
    n_closed = int(np.all(pts <= closed_hi, axis=1).sum())
    return n_strict, n_closed


def local_discrepancy(ps: RationalPointSet, z: Box) -> float:
    """A_N([0,z))/N - vol([0,z)) with strict multiset counting, exact."""
    fz = _box_fractions(ps, z)
    n_strict, _ = box_counts(ps, z)
    vol = Fraction(1)
    for f in fz:
        vol *= f
    return float(Fraction(n_strict, ps.n) - vol)


def _closed_local_value(ps: RationalPointSet, z: Box) -> float:
    """One-sided limit A_closed/N - vol: the closed-branch corner value."""
    fz = _box_fractions(ps, z)
    _, n_closed = box_counts(ps, z)
    vol = Fraction(1)
    for f in fz:
        vol *= f
    return float(Fraction(n_closed, ps.n) - vol)


def _grids(ps: RationalPointSet) -> list[np.ndarray]:
    return [np.concatenate([np.unique(ps.numerators[:, j]),
                            np.array([ps.modulus], dtype=np.int64)])
            for j in range(ps.dim)]


def star_discrepancy_exact(ps: RationalPointSet, caps: Caps = DEFAULT_CAPS,
                           method: str = "auto") -> DiscrepancyResult:
    """Exact D* by the critical-corner scan; rational-exact value and witness.

    Ties are broken to the lexicographically first corner (closed branch
    preferred at the same corner), so results are deterministic.
    """
    if ps.n < 1:
        raise ValueError("point set is empty")
    grids = _grids(ps)
    n_corners = math.prod(len(g) for g in grids)
    if n_corners > caps.max_corners:
        raise BudgetError(
            f"{n_corners} corners exceeds cap of {caps.max_corners}; "
            "reduce p or s, or raise the cap")
    ms = ps.modulus ** ps.dim
    if method == "auto":
        method = "numpy" if ps.n * ms < _INT64_SAFE else "python"
    if method == "numpy":
        num, corner, side = _scan_numpy(ps, grids, ms)
    elif method == "python":
        num, corner, side = _scan_python(ps, grids, ms)
    else:
        raise ValueError(f"unknown method {method!r}")
    denom = ps.n * ms
    exact = Fraction(num, denom)
    witness = tuple(Fraction(int(c), ps.modulus) for c in corner)
    return DiscrepancyResult(value=float(exact), exact=exact, witness=witness,
                             side=side, corners_scanned=n_corners)


def _scan_numpy(ps, grids, ms):
    n_pts, s = ps.n, ps.dim
    best = [-1, None, "closed"]  # numerator over n_pts*ms, corner, side

    def leaf(col, strict, vol_prefix, prefix):
        col_s = np.sort(col)
        g = grids[s - 1]
        closed_cnt = np.searchsorted(col_s, g, side="right")
        strict_coords = np.sort(col[strict])
        open_cnt = np.searchsorted(strict_coords, g, side="left")
        vol = vol_prefix * g
        cn = closed_cnt * ms - n_pts * vol
        on = n_pts * vol - open_cnt * ms
        m_c, m_o = int(cn.max()), int(on.max())
        cand = max(m_c, m_o)
        if cand > best[0]:
            i_c = int(np.argmax(cn)) if m_c == cand else len(g)
            i_o = int(np.argmax(on)) if m_o == cand else len(g)
            if i_c <= i_o:
                best[:] = [cand, prefix + (int(g[i_c]),), "closed"]
            else:
                best[:] = [cand, prefix + (int(g[i_o]),), "open"]

    def rec(sub, strict, vol_prefix, prefix, j):
        col = sub[:, j]
        if j == s - 1:
            leaf(col, strict, vol_prefix, prefix)
            return
        order = np.argsort(col, kind="stable")
        sub, strict, col = sub[order], strict[order], col[order]
        g = grids[j]
        prefix_len = np.searchsorted(col, g, side="right")
        for gi in range(len(g)):
            gv = int(g[gi])
            k = int(prefix_len[gi])
            child_strict = strict[:k] & (col[:k] < gv)
            rec(sub[:k], child_strict, vol_prefix * gv, prefix + (gv,), j + 1)

    rec(ps.numerators, np.ones(n_pts, dtype=bool), 1, (), 0)
    return best[0], best[1], best[2]


def _scan_python(ps, grids, ms):
    """Same scan on Python big integers; exact for any modulus and dimension."""
    n_pts, s = ps.n, ps.dim
    best = [-1, None, "closed"]
    rows = ps.rows()

    def rec(points, vol_prefix, prefix, j):
        # points: list of (row, strict_so_far), sorted on demand
        pts = sorted(points, key=lambda e: e[0][j])
        g = list(int(v) for v in grids[j])
        if j == s - 1:
            i_le = 0
            strict_lt = 0
            k = 0  # scan pointer shared by both counts
            coords = [e[0][j] for e in pts]
            flags = [e[1] for e in pts]
            for gv in g:
                while k < len(coords) and coords[k] < gv:
                    if flags[k]:
                        strict_lt += 1
                    k += 1
                i_le = k
                while i_le < len(coords) and coords[i_le] == gv:
                    i_le += 1
                vol = vol_prefix * gv
                cn = i_le * ms - n_pts * vol
                on = n_pts * vol - strict_lt * ms
                cand = max(cn, on)
                if cand > best[0]:
                    side = "closed" if cn >= on else "open"
                    best[:] = [cand, prefix + (gv,), side]
            return
        k = 0
        child: list = []
        for gv in g:
            while k < len(pts) and pts[k][0][j] <= gv:
                child.append(pts[k])
                k += 1
            # flags must reflect strict inequality against this corner value
            adjusted = [(row, st and row[j] < gv) for row, st in child]
            rec(adjusted, vol_prefix * gv, prefix + (gv,), j + 1)

    rec([(r, True) for r in rows], 1, (), 0)
    return best[0], best[1], best[2]


def _corner_value_closed(pts: np.ndarray, n_pts: int, ms: int, corner) -> Fraction:
    y = np.array(corner, dtype=np.int64)
    a = int(np.all(pts <= y, axis=1).sum())
    vol = math.prod(int(c) for c in corner)
    return Fraction(a * ms - n_pts * vol, n_pts * ms)


def _corner_value_open(pts: np.ndarray, n_pts: int, ms: int, corner) -> Fraction:
    y = np.array(corner, dtype=np.int64)
    a = int(np.all(pts < y, axis=1).sum())
    vol = math.prod(int(c) for c in corner)
    return Fraction(n_pts * vol - a * ms, n_pts * ms)


def star_discrepancy_sampled_lb(ps: RationalPointSet, trials: int,
                                seed: int = 0) -> float:
    """Certified lower bound for D* from seeded random boxes.

    Each sampled box is snapped to critical-grid corners (down for the
    closed branch, up for the open branch), the snapped corners are scored
    in floating point, and the best candidates plus all boxes anchored at
    the points themselves are re-evaluated exactly.  The returned value is
    therefore a true corner value <= D*.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n_pts, s = ps.n, ps.dim
    m = ps.modulus
    ms = m ** s
    uniq = [np.unique(ps.numerators[:, j]) for j in range(s)]
    rng = np.random.default_rng(seed)
    keep = 32
    pts = ps.numerators

    closed_cand: list[tuple[float, np.ndarray]] = []
    open_cand: list[tuple[float, np.ndarray]] = []
    chunk = max(1, int(2_000_000 // max(1, n_pts * s)))
    remaining = trials
    while remaining > 0:
        b = min(chunk, remaining)
        remaining -= b
        boxes = rng.random((b, s)) * m  # box corners scaled by the modulus

        down = np.empty((b, s), dtype=np.int64)
        up = np.empty((b, s), dtype=np.int64)
        valid_down = np.ones(b, dtype=bool)
        for j in range(s):
            i = np.searchsorted(uniq[j], boxes[:, j], side="left")
            valid_down &= i > 0
            down[:, j] = uniq[j][np.maximum(i - 1, 0)]
            up[:, j] = np.where(i < len(uniq[j]), uniq[j][np.minimum(i, len(uniq[j]) - 1)], m)

        a_closed = np.all(pts[None, :, :] <= down[:, None, :], axis=2).sum(axis=1)
        vol_down = (down / m).prod(axis=1)
        val_closed = np.where(valid_down, a_closed / n_pts - vol_down, -np.inf)

        a_open = np.all(pts[None, :, :] < up[:, None, :], axis=2).sum(axis=1)
        vol_up = (up / m).prod(axis=1)
        val_open = vol_up - a_open / n_pts

        for vals, corners, bucket in ((val_closed, down, closed_cand),
                                      (val_open, up, open_cand)):
            top = np.argsort(vals)[-keep:]
            bucket.extend((float(vals[i]), corners[i].copy()) for i in top)

    best = Fraction(0)
    for val, corner in sorted(closed_cand, key=lambda e: -e[0])[:keep]:
        if math.isfinite(val):
            best = max(best, _corner_value_closed(pts, n_pts, ms, [int(v) for v in corner]))
    for _, corner in sorted(open_cand, key=lambda e: -e[0])[:keep]:
        best = max(best, _corner_value_open(pts, n_pts, ms, [int(v) for v in corner]))

    for row in np.unique(pts, axis=0):
        corner = [int(v) for v in row]
        best = max(best, _corner_value_closed(pts, n_pts, ms, corner))
        best = max(best, _corner_value_open(pts, n_pts, ms, corner))

    return float(max(best, Fraction(0)))


def _enumerate_subsets(ps: RationalPointSet, w: Weights,
                       caps: Caps) -> list[tuple[int, ...]]:
    """Positive-weight subsets of [dim] in deterministic order."""
    s = ps.dim
    if isinstance(w, ProductWeights):
        if s > caps.max_subset_dim:
            raise BudgetError(
                f"subset enumeration over 2^{s} subsets exceeds the "
                f"dimension cap {caps.max_subset_dim}")
        out = []
        for mask in range(1, 1 << s):
            u = tuple(j + 1 for j in range(s) if mask >> j & 1)
            if gamma_of(w, u) > 0:
                out.append(u)
        return out
    out = []
    for u in sorted(w.entries):
        if u[-1] > s:
            raise ValueError(f"weight subset {u} out of range for dimension {s}")
        if w.entries[u] > 0:
            out.append(u)
    return out


def weighted_local_discrepancy(ps: RationalPointSet, w: Weights, z: Box,
                               caps: Caps = DEFAULT_CAPS) -> float:
    """max over nonempty u of gamma_u * |Delta(z_u, 1)| at a single box."""
    fz = _box_fractions(ps, z)
    best = 0.0
    for u in _enumerate_subsets(ps, w, caps):
        zu = [fz[j - 1] if j in u else Fraction(1) for j in range(1, ps.dim + 1)]
        best = max(best, gamma_of(w, u) * abs(local_discrepancy(ps, zu)))
    return best


def weighted_star_discrepancy_exact(
        ps: RationalPointSet, w: Weights,
        caps: Caps = DEFAULT_CAPS) -> WeightedDiscrepancyResult:
    """Exact max over nonempty u of gamma_u * D*(projection onto u).

    Zero-weight subsets are skipped; the winning subset's witness box is
    re-embedded into full dimension with free coordinates at 1.
    """
    per_subset: dict[tuple[int, ...], float] = {}
    best_val = 0.0
    best_u: tuple[int, ...] = ()
    best_res: DiscrepancyResult | None = None
    for u in _enumerate_subsets(ps, w, caps):
        res = star_discrepancy_exact(project(ps, u), caps=caps)
        val = gamma_of(w, u) * res.value
        per_subset[u] = val
        if val > best_val:
            best_val, best_u, best_res = val, u, res
    if best_res is None:
        witness = tuple(Fraction(1) for _ in range(ps.dim))
        return WeightedDiscrepancyResult(value=0.0, subset=(), witness=witness,
                                         side="closed", per_subset=per_subset)
    wit = {j: best_res.witness[i] for i, j in enumerate(best_u)}
    witness = tuple(wit.get(j, Fraction(1)) for j in range(1, ps.dim + 1))
    return WeightedDiscrepancyResult(value=best_val, subset=best_u,
                                     witness=witness, side=best_res.side,
                                     per_subset=per_subset)
