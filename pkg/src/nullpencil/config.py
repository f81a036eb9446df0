"""Tolerance and sampling configuration."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    null: float = 1e-9  # |<a', a'>| for nullity, analytic derivatives
    frame: float = 1e-10  # metric, Frenet and cross-identity defects
    analytic: float = 1e-8  # iso/asymptotic checks and residuals
    fd: float = 1e-4  # finite-difference cross-checks (diagnostic)
    structural: float = 1e-12  # X(t0)=0, m == 0 and friends
    k1: float = 1e-8  # lower bound on k1 = |a''|

    def updated(self, **overrides) -> "Tolerances":
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise KeyError(f"unknown tolerance(s): {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in overrides.items() if v is not None})


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_SAMPLES = 256
