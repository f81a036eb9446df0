"""Command-line interface.

Exit codes: 0 pass, 1 usage/IO/parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import Tolerances
from .curve import check_null, validate_frame
from .errors import NullPencilError
from .export import export_csv, export_obj
from .presets import PRESETS, get_preset
from .report import VerificationReport
from .scene import Scene, load_scene
from .surface import verify_member

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

_TOL_FLAGS = ("null", "frame", "analytic", "fd", "structural", "k1")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, help="number of s-samples for the checks")
    for name in _TOL_FLAGS:
        p.add_argument(f"--tol-{name.replace('_', '-')}", dest=f"tol_{name}", type=float, metavar="TOL")


def _add_build(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="OBJ path (defaults to the scene's output.obj)")
    p.add_argument("--report", help="also write the residual CSV here")
    p.add_argument("--grid", type=int, nargs=2, metavar=("N_S", "N_T"), help="override the mesh grid")
    _add_overrides(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nullpencil", description="Surface families through a common null asymptotic curve.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-curve", help="nullity and Cartan-frame report for a scene's curve")
    p.add_argument("scene")
    _add_overrides(p)

    p = sub.add_parser("verify", help="full verification report; exit 2 on failure")
    p.add_argument("scene")
    p.add_argument("--csv", help="write the residual table here")
    _add_overrides(p)

    p = sub.add_parser("build", help="write the member as an OBJ mesh")
    p.add_argument("scene")
    _add_build(p)

    pre = sub.add_parser("preset", help="built-in worked examples")
    psub = pre.add_subparsers(dest="preset_command", required=True, parser_class=_Parser)
    psub.add_parser("list", help="list preset names")
    p = psub.add_parser("show", help="print a preset's scene JSON")
    p.add_argument("name")
    p = psub.add_parser("build", help="write a preset mesh")
    p.add_argument("name")
    _add_build(p)
    p = psub.add_parser("verify", help="verify a preset; exit 2 on failure")
    p.add_argument("name")
    p.add_argument("--csv", help="write the residual table here")
    _add_overrides(p)
    return parser


def _settings(scene: Scene, args) -> tuple[Tolerances, int]:
    overrides = {k: getattr(args, f"tol_{k}", None) for k in _TOL_FLAGS}
    tol = scene.tolerances.updated(**{k: v for k, v in overrides.items() if v is not None})
    samples = args.samples if getattr(args, "samples", None) else scene.samples
    if samples < 2:
        raise _UsageError("--samples must be at least 2")
    return tol, samples


def _verify(scene: Scene, args, title: str) -> int:
    tol, samples = _settings(scene, args)
    report = verify_member(scene.member(), tol, samples, title=title)
    print(report.render())
    if getattr(args, "csv", None):
        export_csv(report, args.csv)
    return EXIT_OK if report.passed else EXIT_FAIL


def _check_curve(scene: Scene, args, title: str) -> int:
    tol, samples = _settings(scene, args)
    rep = VerificationReport(title=title)
    rep.items.append(check_null(scene.curve, samples, tol.null))
    items, warns, info = validate_frame(scene.curve, samples, tol)
    rep.items += items
    rep.warnings += warns
    rep.info.update(info)
    print(rep.render())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _build(scene: Scene, args, title: str) -> int:
    path = args.output or scene.output.get("obj")
    if not path:
        raise _UsageError("no output path: pass -o or set output.obj in the scene")
    member = scene.member(tuple(args.grid) if args.grid else None)
    nv, nf = export_obj(member, path)
    print(f"{title}: wrote {path} ({nv} vertices, {nf} faces)")
    csv_path = args.report or scene.output.get("csv")
    if csv_path:
        tol, samples = _settings(scene, args)
        report = verify_member(member, tol, samples, title=title)
        rows = export_csv(report, csv_path)
        print(f"{title}: wrote {csv_path} ({rows} rows)")
    return EXIT_OK


def _dispatch(args) -> int:
    if args.command == "preset":
        if args.preset_command == "list":
            for name, p in PRESETS.items():
                print(f"{name:15} {p.description}")
            return EXIT_OK
        try:
            preset = get_preset(args.name)
        except KeyError as exc:
            raise _UsageError(str(exc.args[0])) from None
        if args.preset_command == "show":
            print(json.dumps(preset.document, indent=2))
            return EXIT_OK
        scene, title = preset.scene, f"preset {preset.name}"
        action = {"build": _build, "verify": _verify}[args.preset_command]
        return action(scene, args, title)
    scene = load_scene(args.scene)
    title = scene.name or args.scene
    action = {"check-curve": _check_curve, "verify": _verify, "build": _build}[args.command]
    return action(scene, args, title)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (NullPencilError, OSError, ValueError) as exc:
        print(f"nullpencil: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
