#!/usr/bin/env python3
"""Write an OBJ mesh and a residual CSV for every preset.

Usage: scripts/regenerate_meshes.py [OUT_DIR] [--grid N_S N_T] [--samples N]
"""

import argparse
from pathlib import Path

from nullpencil.export import export_csv, export_obj
from nullpencil.presets import PRESETS
from nullpencil.surface import verify_member


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="meshes")
    ap.add_argument("--grid", type=int, nargs=2, metavar=("N_S", "N_T"))
    ap.add_argument("--samples", type=int, default=256)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, preset in PRESETS.items():
        member = preset.scene.member(tuple(args.grid) if args.grid else None)
        nv, nf = export_obj(member, out / f"{name}.obj")
        report = verify_member(member, n_samples=args.samples, title=name)
        export_csv(report, out / f"{name}.csv")
        status = "PASS" if report.passed else "FAIL"
        print(f"{name:15} {nv:6d} vertices {nf:6d} faces  verify {status}")


if __name__ == "__main__":
    main()
