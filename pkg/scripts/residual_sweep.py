#!/usr/bin/env python3
"""Tabulate the asymptotic residual along t = t0 for each preset.

Shows max |R|, max |R - R_reduced| and how both behave as the sample count
grows; useful when adding a new preset or marching form.
"""

import numpy as np

from nullpencil.presets import PRESETS
from nullpencil.surface import asymptotic_residual


def main() -> None:
    print(f"{'preset':15} {'samples':>7} {'max|R|':>11} {'max|R-Rr|':>11}")
    for name, preset in PRESETS.items():
        member = preset.scene.member()
        for n in (16, 64, 256, 1024):
            _, R, Rr = asymptotic_residual(member, n)
            print(f"{name:15} {n:7d} {np.max(np.abs(R)):11.3e} {np.max(np.abs(R - Rr)):11.3e}")


if __name__ == "__main__":
    main()
