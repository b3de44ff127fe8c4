"""Quasi-Monte Carlo harness: equal-weight rules vs. the discrepancy bound.

The integrand family is multilinear, f(x) = prod_j (1 + c_j (x_j - 1/2)), so
the exact integral over the unit cube is 1 and the variation pairing with the
star discrepancy has the closed form

    V(f) = sum over nonempty u of prod_{j in u} |c_j| prod_{j notin u} (1 + |c_j|/2)
         = prod_j (1 + 3|c_j|/2) - prod_j (1 + |c_j|/2),

which makes the error inequality |estimate - 1| <= D* V(f) checkable exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .config import DEFAULT_CAPS, BudgetError, Caps
from .discrepancy import star_discrepancy_exact
from .pointset import PSetKind, RationalPointSet, generate
from .weights import ProductWeights


@dataclass(frozen=True)
class ProductIntegrand:
    coefficients: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(float(c) for c in self.coefficients))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __call__(self, x: Sequence[float]) -> float:
        out = 1.0
        for c, xi in zip(self.coefficients, x):
            out *= 1.0 + c * (xi - 0.5)
        return out


def hk_variation(f: ProductIntegrand) -> float:
    """Closed-form variation prod(1 + 3|c|/2) - prod(1 + |c|/2)."""
    full = 1.0
    half = 1.0
    for c in f.coefficients:
        a = abs(c)
        full *= 1.0 + a + a / 2.0
        half *= 1.0 + a / 2.0
    return full - half


def qmc_integrate(ps: RationalPointSet, f: ProductIntegrand) -> tuple[float, float]:
    """(estimate, |estimate - 1|) of the equal-weight rule over ps.

    Points are floated from their exact numerators; accumulation is
    compensated (fsum) so the error column is trustworthy at 1e-14.
    """
    if f.dim != ps.dim:
        raise ValueError(f"integrand dim {f.dim} != point set dim {ps.dim}")
    m = float(ps.modulus)
    values = (f([v / m for v in row]) for row in ps.numerators)
    estimate = math.fsum(values) / ps.n
    return estimate, abs(estimate - 1.0)


@dataclass(frozen=True)
class ConvergenceRow:
    p: int
    n: int
    estimate: float
    error: float
    dstar: float
    kh_bound: float
    bound_source: str  # "exact" | "thm1"


def convergence_table(kind: PSetKind, s: int, f: ProductIntegrand,
                      primes: Sequence[int],
                      caps: Caps = DEFAULT_CAPS) -> list[ConvergenceRow]:
    """One row per prime: estimate, error, D*, and the error bound D* V(f).

    Falls back to the closed-form bound with unit weights when the exact
    corner scan would blow the corner budget.
    """
    from .bounds import thm1_bound

    if f.dim != s:
        raise ValueError(f"integrand dim {f.dim} != s {s}")
    variation = hk_variation(f)
    rows = []
    for p in primes:
        ps = generate(kind, p, s, caps=caps)
        estimate, error = qmc_integrate(ps, f)
        try:
            dstar = star_discrepancy_exact(ps, caps=caps).value
            source = "exact"
        except BudgetError:
            unit = ProductWeights(gammas=(1.0,) * s)
            dstar = thm1_bound(kind, p, s, unit).value
            source = "thm1"
        rows.append(ConvergenceRow(p=p, n=ps.n, estimate=estimate, error=error,
                                   dstar=dstar, kh_bound=dstar * variation,
                                   bound_source=source))
    return rows
