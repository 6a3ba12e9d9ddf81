"""Run configuration: search ceilings, seeds and output conventions.

Every exponential search in the library is guarded by a ceiling taken
from a :class:`Ceilings` instance, so runaway computations are rejected
up front instead of hanging.  All values can be overridden through
``HCOL_*`` environment variables (e.g. ``HCOL_ORACLE_VERTICES=8000``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields


@dataclass(frozen=True)
class Ceilings:
    """Feasibility ceilings for the exponential searches.

    oracle_vertices:  largest graph fed to the homomorphism oracle.
    witness_vertices: largest graph for exact witness-number search.
    gadget_vertices:  largest candidate gadget in the enumeration phase.
    field_degree:     largest extension degree m for GF(p^m).
    core_vertices:    largest graph for core computation.
    b_pattern_m:      largest m for B(m, l) pattern searches.
    ortho_vertices:   largest vertex count of an orthogonality graph.
    subset_budget:    largest number of cover subsets a kernel may enumerate.
    retry_cap:        attempts for seeded sample-and-verify loops.
    """

    oracle_vertices: int = 4096
    witness_vertices: int = 64
    gadget_vertices: int = 6
    field_degree: int = 8
    core_vertices: int = 12
    b_pattern_m: int = 7
    ortho_vertices: int = 5000
    subset_budget: int = 500_000
    retry_cap: int = 64

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"ceiling {f.name} must be positive")


ENV_PREFIX = "HCOL_"


def ceilings_from_env(base: Ceilings | None = None) -> Ceilings:
    """Return `base` with any HCOL_<NAME> environment overrides applied."""
    base = base or Ceilings()
    overrides = {}
    for f in fields(Ceilings):
        raw = os.environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            overrides[f.name] = int(raw)
    if not overrides:
        return base
    values = {f.name: getattr(base, f.name) for f in fields(Ceilings)}
    values.update(overrides)
    return Ceilings(**values)


@dataclass(frozen=True)
class RunConfig:
    """Configuration for one CLI invocation."""

    seed: int = 0
    ceilings: Ceilings = field(default_factory=Ceilings)
    output: str | None = None  # path, or None for stdout
    format: str = "text"  # "text" | "json"
    threads: int = 1

    def __post_init__(self) -> None:
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.format!r}")
        if self.threads <= 0:
            raise ValueError("threads must be positive")


DEFAULT_CEILINGS = Ceilings()
