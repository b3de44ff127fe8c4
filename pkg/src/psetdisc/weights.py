"""Weight models for the weighted star discrepancy.

Two variants:

* ProductWeights -- a per-coordinate sequence gamma_1, gamma_2, ... given as
  a finite listed prefix plus a tail rule making the infinite part concrete
  (the dimension-free constants need true infinite tail sums, which a finite
  list cannot provide).  gamma_u = prod_{j in u} gamma_j.
* GeneralWeights -- an explicit map from coordinate subsets to nonnegative
  gamma_u; unlisted subsets default to 0, which removes them from every
  maximization.

Weights need not be <= 1; only nonnegativity is required.  Monotonicity of
product weights is enforced only where the dimension-free envelope constants
are requested (bounds.thm2_params), not here.

Weight-file format (UTF-8, line based, '#' starts a comment):

    line 1:        "product" | "general"
    product lines: "<j> <gamma_j>"  with j = 1, 2, 3, ... consecutively,
                   optional final "tail zero" | "tail geometric <r>"
                   | "tail powerlaw <a> <c>"   (gamma_j = c * j**-a)
    general lines: "<i1,i2,...> <gamma>"  with 1-based sorted indices
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .config import DivergenceError


class WeightFormatError(ValueError):
    """Malformed weight file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class ZeroTail:
    pass


@dataclass(frozen=True)
class GeometricTail:
    ratio: float

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"geometric ratio must be in (0,1), got {self.ratio}")


@dataclass(frozen=True)
class PowerLawTail:
    exponent: float  # gamma_j = scale * j**-exponent
    scale: float

    def __post_init__(self):
        if self.exponent <= 0 or self.scale <= 0:
            raise ValueError("powerlaw tail needs exponent > 0 and scale > 0")


TailRule = Union[ZeroTail, GeometricTail, PowerLawTail]


@dataclass(frozen=True)
class ProductWeights:
    gammas: tuple[float, ...] = ()
    tail: TailRule = field(default_factory=ZeroTail)

    def __post_init__(self):
        gs = tuple(float(g) for g in self.gammas)
        if any(g < 0 for g in gs):
            raise ValueError("product weights must be nonnegative")
        object.__setattr__(self, "gammas", gs)

    def gamma(self, j: int) -> float:
        """gamma_j for 1-based coordinate index j."""
        if j < 1:
            raise ValueError(f"coordinate index must be >= 1, got {j}")
        k = len(self.gammas)
        if j <= k:
            return self.gammas[j - 1]
        if isinstance(self.tail, ZeroTail):
            return 0.0
        if isinstance(self.tail, GeometricTail):
            anchor = self.gammas[-1] if self.gammas else 1.0
            return anchor * self.tail.ratio ** (j - k)
        return self.tail.scale * float(j) ** -self.tail.exponent

    def is_non_increasing(self) -> bool:
        """gamma_1 >= gamma_2 >= ... over the prefix and across the junction."""
        gs = self.gammas
        if any(gs[i] < gs[i + 1] for i in range(len(gs) - 1)):
            return False
        if len(gs) == 0:
            return True
        # geometric and powerlaw tails are intrinsically decreasing
        return gs[-1] >= self.gamma(len(gs) + 1)


@dataclass(frozen=True)
class GeneralWeights:
    entries: dict[tuple[int, ...], float]

    def __post_init__(self):
        canon: dict[tuple[int, ...], float] = {}
        for u, g in self.entries.items():
            key = _canonical_subset(u)
            if float(g) < 0:
                raise ValueError(f"weight for subset {key} must be nonnegative")
            if key in canon:
                raise ValueError(f"duplicate subset {key}")
            canon[key] = float(g)
        object.__setattr__(self, "entries", canon)


Weights = Union[ProductWeights, GeneralWeights]


def _canonical_subset(u: Iterable[int]) -> tuple[int, ...]:
    idx = tuple(sorted(int(j) for j in u))
    if not idx:
        raise ValueError("subset must be nonempty")
    if idx[0] < 1:
        raise ValueError(f"subset indices must be >= 1, got {idx}")
    if len(set(idx)) != len(idx):
        raise ValueError(f"subset indices must be distinct, got {idx}")
    return idx


def gamma_of(w: Weights, u: Iterable[int]) -> float:
    """Weight gamma_u of a nonempty coordinate subset."""
    key = _canonical_subset(u)
    if isinstance(w, ProductWeights):
        out = 1.0
        for j in key:
            out *= w.gamma(j)
        return out
    return w.entries.get(key, 0.0)


def _power_series_tail(q: float, start: int, rel_tol: float = 1e-13) -> float:
    """sum_{j >= start} j**-q for q > 1, certified by a sandwich of integral
    bounds: trapezoid from below, midpoint-shifted integral from above."""
    partial = 0.0
    m = start
    block = max(1024, start)
    while True:
        lower = m ** (1.0 - q) / (q - 1.0) + 0.5 * m ** -q
        upper = (m - 0.5) ** (1.0 - q) / (q - 1.0)
        mid = 0.5 * (lower + upper)
        if upper - lower <= rel_tol * (partial + mid) + 1e-300:
            return partial + mid
        j = np.arange(m, m + block, dtype=np.float64)
        partial += float(np.sum(j ** -q))
        m += block
        block *= 2


def gamma_tail_sum(w: ProductWeights, k: int, t: float = 1.0) -> float:
    """Tail norm Gamma_{k,t} = (sum_{j>k} gamma_j**t)**(1/t); Gamma_k at t=1.

    Exact closed form for zero/geometric tails; certified truncation for
    powerlaw tails (requires exponent*t > 1, else DivergenceError).
    """
    if not isinstance(w, ProductWeights):
        raise TypeError("tail sums are defined for product weights only")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    kpre = len(w.gammas)
    total = sum(w.gammas[j - 1] ** t for j in range(k + 1, kpre + 1))
    start = max(k, kpre) + 1
    tail = w.tail
    if isinstance(tail, GeometricTail):
        anchor = w.gammas[-1] if w.gammas else 1.0
        if anchor > 0:
            rt = tail.ratio ** t
            total += anchor ** t * tail.ratio ** (t * (start - kpre)) / (1.0 - rt)
    elif isinstance(tail, PowerLawTail):
        q = tail.exponent * t
        if q <= 1.0:
            raise DivergenceError(
                f"sum of gamma_j**t diverges: exponent*t = {q} <= 1")
        total += tail.scale ** t * _power_series_tail(q, start)
    return total ** (1.0 / t)


def parse_weights(text: str) -> Weights:
    """Parse the weight-file format; malformed lines raise WeightFormatError."""
    mode = None
    prod_gammas: list[float] = []
    prod_tail: TailRule | None = None
    gen_entries: dict[tuple[int, ...], float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if mode is None:
            if line not in ("product", "general"):
                raise WeightFormatError(line_no, f"expected 'product' or 'general', got {line!r}")
            mode = line
            continue
        parts = line.split()
        if mode == "product":
            if parts[0] == "tail":
                if prod_tail is not None:
                    raise WeightFormatError(line_no, "duplicate tail rule")
                prod_tail = _parse_tail(line_no, parts[1:])
                continue
            if prod_tail is not None:
                raise WeightFormatError(line_no, "tail rule must be the final line")
            if len(parts) != 2:
                raise WeightFormatError(line_no, f"expected '<j> <gamma>', got {line!r}")
            j = _parse_int(line_no, parts[0])
            g = _parse_float(line_no, parts[1])
            if j != len(prod_gammas) + 1:
                raise WeightFormatError(
                    line_no, f"indices must be consecutive from 1, expected {len(prod_gammas) + 1}, got {j}")
            if g < 0:
                raise WeightFormatError(line_no, f"negative weight {g}")
            prod_gammas.append(g)
        else:
            if len(parts) != 2:
                raise WeightFormatError(line_no, f"expected '<i1,i2,...> <gamma>', got {line!r}")
            idx = tuple(_parse_int(line_no, tok) for tok in parts[0].split(","))
            if list(idx) != sorted(set(idx)) or (idx and idx[0] < 1):
                raise WeightFormatError(line_no, f"indices must be 1-based, sorted, distinct: {parts[0]!r}")
            if not idx:
                raise WeightFormatError(line_no, "empty subset")
            g = _parse_float(line_no, parts[1])
            if g < 0:
                raise WeightFormatError(line_no, f"negative weight {g}")
            if idx in gen_entries:
                raise WeightFormatError(line_no, f"duplicate subset {parts[0]}")
            gen_entries[idx] = g
    if mode is None:
        raise WeightFormatError(1, "empty weight file")
    if mode == "product":
        return ProductWeights(gammas=tuple(prod_gammas), tail=prod_tail or ZeroTail())
    return GeneralWeights(entries=gen_entries)


def _parse_tail(line_no: int, parts: list[str]) -> TailRule:
    if not parts:
        raise WeightFormatError(line_no, "tail rule missing kind")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "zero" and not args:
            return ZeroTail()
        if kind == "geometric" and len(args) == 1:
            return GeometricTail(ratio=_parse_float(line_no, args[0]))
        if kind == "powerlaw" and len(args) == 2:
            return PowerLawTail(exponent=_parse_float(line_no, args[0]),
                                scale=_parse_float(line_no, args[1]))
    except ValueError as exc:
        raise WeightFormatError(line_no, str(exc)) from None
    raise WeightFormatError(line_no, f"bad tail rule: {' '.join([kind] + args)!r}")


def _parse_int(line_no: int, tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise WeightFormatError(line_no, f"expected integer, got {tok!r}") from None


def _parse_float(line_no: int, tok: str) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise WeightFormatError(line_no, f"expected number, got {tok!r}") from None
    if math.isnan(v) or math.isinf(v):
        raise WeightFormatError(line_no, f"weight must be finite, got {tok!r}")
    return v


def serialize_weights(w: Weights) -> str:
    """Canonical text form; parse_weights(serialize_weights(w)) == w."""
    if isinstance(w, ProductWeights):
        lines = ["product"]
        lines += [f"{j} {g!r}" for j, g in enumerate(w.gammas, start=1)]
        tail = w.tail
        if isinstance(tail, GeometricTail):
            lines.append(f"tail geometric {tail.ratio!r}")
        elif isinstance(tail, PowerLawTail):
            lines.append(f"tail powerlaw {tail.exponent!r} {tail.scale!r}")
        else:
            lines.append("tail zero")
        return "\n".join(lines) + "\n"
    lines = ["general"]
    for u in sorted(w.entries):
        lines.append(f"{','.join(map(str, u))} {w.entries[u]!r}")
    return "\n".join(lines) + "\n"
