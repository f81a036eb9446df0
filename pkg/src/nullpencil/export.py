"""OBJ mesh and CSV residual export.

Floats are written with 17 significant digits and ``-0`` is normalised to
``0``, so output is byte-identical for a fixed scene. Files are written to a
temporary sibling and renamed into place.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

from .curve import curve_position
from .report import VerificationReport
from .surface import SurfaceFamilyMember, surface_grid

__all__ = ["obj_text", "export_obj", "csv_text", "export_csv", "CSV_HEADER", "fmt"]

CSV_HEADER = (
    "s",
    "phi1",
    "phi2",
    "phi3",
    "residual_direct",
    "residual_reduced",
    "null_defect",
    "normal_norm",
)


def fmt(x: float) -> str:
    return f"{float(x) + 0.0:.17g}"


def _atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def obj_text(member: SurfaceFamilyMember) -> tuple[str, int, int]:
    """OBJ document for the member plus its spine curve: (text, n_vertices, n_faces)."""
    n_s, n_t = member.n_s, member.n_t
    if n_s < 2 or n_t < 2:
        raise ValueError(f"grid must be at least 2x2, got {n_s}x{n_t}")
    pts = surface_grid(member)
    out = io.StringIO()
    out.write(f"# surface family member, grid {n_s}x{n_t} (s-major)\n")
    out.write("o surface\n")
    for i in range(n_s):
        for j in range(n_t):
            x, y, z = pts[i, j]
            out.write(f"v {fmt(x)} {fmt(y)} {fmt(z)}\n")
    faces = 0
    for i in range(n_s - 1):
        for j in range(n_t - 1):
            a = i * n_t + j + 1
            out.write(f"f {a} {a + 1} {a + n_t + 1} {a + n_t}\n")
            faces += 1
    out.write("o curve\n")
    base = n_s * n_t
    for s in member.s_grid():
        x, y, z = curve_position(member.curve, float(s)).tuple()
        out.write(f"v {fmt(x)} {fmt(y)} {fmt(z)}\n")
    out.write("l " + " ".join(str(base + k + 1) for k in range(n_s)) + "\n")
    return out.getvalue(), base + n_s, faces


def export_obj(member: SurfaceFamilyMember, path: str | Path) -> tuple[int, int]:
    """Write the mesh; returns (vertex count, face count)."""
    text, nv, nf = obj_text(member)
    _atomic_write(path, text)
    return nv, nf


def csv_text(report: VerificationReport) -> str:
    if not report.rows:
        raise ValueError("report has no s-samples to export")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.rows:
        w.writerow([fmt(getattr(r, k)) for k in CSV_HEADER])
    return buf.getvalue()


def export_csv(report: VerificationReport, path: str | Path) -> int:
    """Write the per-sample residual table; returns the row count."""
    _atomic_write(path, csv_text(report))
    return len(report.rows)
