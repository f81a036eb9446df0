"""Verification items, condition verdicts and the aggregate report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

CONDITION_IDS = ("Iso-3.2", "Asym-3.4", "Suff-3.5", "Suff-3.7", "Suff-3.9")


@dataclass(frozen=True)
class VerificationItem:
    name: str
    passed: bool
    max_defect: float
    tolerance: float
    mean_defect: float = 0.0
    argmax_s: float | None = None
    detail: str = ""
    mandatory: bool = True

    def line(self) -> str:
        tag = "PASS" if self.passed else ("FAIL" if self.mandatory else "WARN")
        where = "" if self.argmax_s is None else f"  at s={self.argmax_s:.6g}"
        extra = f"  ({self.detail})" if self.detail else ""
        return (
            f"{tag:4}  {self.name:<28} max={self.max_defect:.3e} mean={self.mean_defect:.3e}"
            f" tol={self.tolerance:.0e}{where}{extra}"
        )


def item_from_samples(
    name: str,
    s_values: Sequence[float],
    defects: Sequence[float],
    tolerance: float,
    detail: str = "",
    mandatory: bool = True,
) -> VerificationItem:
    d = np.abs(np.asarray(defects, dtype=float))
    if d.size == 0:
        raise ValueError(f"{name}: no samples")
    k = int(np.argmax(d))
    worst = float(d[k])
    return VerificationItem(
        name=name,
        passed=bool(np.isfinite(worst) and worst <= tolerance),
        max_defect=worst,
        tolerance=tolerance,
        mean_defect=float(d.mean()),
        argmax_s=float(s_values[k]),
        detail=detail,
        mandatory=mandatory,
    )


@dataclass(frozen=True)
class ConditionVerdict:
    condition_id: str
    passed: bool
    max_defect: float
    detail: str = ""
    argmax_s: float | None = None

    def __post_init__(self):
        if self.condition_id not in CONDITION_IDS:
            raise ValueError(f"unknown condition id {self.condition_id!r}")
        if not self.max_defect >= 0:
            raise ValueError("max_defect must be non-negative")

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        where = "" if self.argmax_s is None else f"  at s={self.argmax_s:.6g}"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{tag:4}  {self.condition_id:<28} defect={self.max_defect:.3e}{where}{extra}"


@dataclass(frozen=True)
class SampleRow:
    """One s-sample of the residual table written to CSV."""

    s: float
    phi1: float
    phi2: float
    phi3: float
    residual_direct: float
    residual_reduced: float
    null_defect: float
    normal_norm: float


@dataclass
class VerificationReport:
    title: str = ""
    items: list[VerificationItem] = field(default_factory=list)
    verdicts: list[ConditionVerdict] = field(default_factory=list)
    # verdicts that only inform (sufficient conditions); never flip the outcome
    advisory_verdicts: list[ConditionVerdict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    rows: list[SampleRow] = field(default_factory=list)
    info: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items if i.mandatory) and all(v.passed for v in self.verdicts)

    def item(self, name: str) -> VerificationItem:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def verdict(self, condition_id: str) -> ConditionVerdict:
        for v in self.verdicts + self.advisory_verdicts:
            if v.condition_id == condition_id:
                return v
        raise KeyError(condition_id)

    def failures(self) -> list[str]:
        bad = [i.name for i in self.items if i.mandatory and not i.passed]
        return bad + [v.condition_id for v in self.verdicts if not v.passed]

    def render(self) -> str:
        out = [f"== {self.title}" if self.title else "== verification report"]
        out += [i.line() for i in self.items]
        out += [v.line() for v in self.verdicts]
        out += [v.line().replace("FAIL", "INFO", 1) + "  [sufficient only]" if not v.passed else v.line()
                for v in self.advisory_verdicts]
        for k, v in self.info.items():
            out.append(f"INFO  {k} = {v:.6g}")
        out += [f"WARN  {w}" for w in self.warnings]
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out)
