"""Computational caps and shared error types.

Every potentially explosive enumeration (corner grids, frequency-vector
sweeps, point-set materialization) is guarded by a cap from the `Caps`
record.  The environment variable PSET_DISC_MAX_OPS replaces all three
operation-count caps with a single value; the subset-dimension guard is a
structural limit and stays fixed.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

ENV_MAX_OPS = "PSET_DISC_MAX_OPS"


class BudgetError(Exception):
    """A configured computational cap would be exceeded."""


class DivergenceError(ValueError):
    """A weight tail sum does not converge."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class Caps:
    max_point_entries: int = 10**7  # N*s entries per generated point set
    max_corners: int = 10**9        # corner-count operations in the exact scan
    max_freq_vectors: int = 10**7   # frequency vectors per enumeration
    max_subset_dim: int = 20        # 2^s guard for subset enumeration

    @classmethod
    def from_env(cls) -> "Caps":
        raw = os.environ.get(ENV_MAX_OPS)
        if raw is None:
            return cls()
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_MAX_OPS} must be an integer, got {raw!r}") from None
        if n <= 0:
            raise ValueError(f"{ENV_MAX_OPS} must be positive, got {n}")
        return cls(max_point_entries=n, max_corners=n, max_freq_vectors=n)


DEFAULT_CAPS = Caps()
