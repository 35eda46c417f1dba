"""Command line front end.

    equising analyze FILE [--criteria 3d-ea,4d-ea,...] [--seed N]
                     [--format text|json] [--dump-resolution] [--fix FILE]

Exit codes: 0 if at least one requested criterion certifies smoothness,
1 if every requested criterion is undecided, 2 on input or analysis errors.
"""
from __future__ import annotations

import argparse
import sys

from .curvefile import CurveFileError, parse_curve_file
from .fields import QQ
from .germ import resolve
from .hilbert import (
    AnalysisError,
    ProjectiveCurve,
    SurfaceData,
    criterion_3d,
    criterion_4d,
    criterion_mixed,
    criterion_surface,
)
from .report import analysis_json_obj, render_json, render_text
from .textio import ParseError, format_scalar

CRITERIA = ("3d-ea", "3d-es", "4d-ea", "4d-es", "surface-ea", "surface-es", "mixed")
DEFAULT_CRITERIA = "3d-ea,3d-es,4d-ea,4d-es"


def build_parser():
    ap = argparse.ArgumentParser(prog="equising",
                                 description="local invariants of plane curve singularities and "
                                             "smoothness certificates for equianalytic/equisingular "
                                             "families")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="analyze a curve file")
    an.add_argument("file")
    an.add_argument("--criteria", default=DEFAULT_CRITERIA,
                    help="comma separated subset of %s" % ",".join(CRITERIA))
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--format", choices=("text", "json"), default="text")
    an.add_argument("--dump-resolution", action="store_true")
    an.add_argument("--fix", help="partition file for the mixed criterion")
    return ap


def _normalize_partition_keys(cf, points):
    """Match user-written point keys against canonical point labels."""
    out = {}
    default = cf.partition.get("__default__", "free")
    canon = {}
    for p in points:
        canon[p.label().replace(" ", "")] = p.label()
    for key, cat in cf.partition.items():
        if key == "__default__":
            continue
        k = key.replace(" ", "")
        if k not in canon:
            raise AnalysisError("partition names unknown point %s" % key)
        out[canon[k]] = cat
    for p in points:
        out.setdefault(p.label(), default)
    return out


def run(config_args, out=sys.stdout, err=sys.stderr):
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # exact coefficients can be very long
    args = config_args
    wanted = [c.strip() for c in args.criteria.split(",") if c.strip()]
    for c in wanted:
        if c not in CRITERIA:
            err.write("unknown criterion %r (choose from %s)\n" % (c, ", ".join(CRITERIA)))
            return 2
    if not wanted:
        err.write("at least one criterion must be requested\n")
        return 2
    try:
        with open(args.file) as fh:
            cf = parse_curve_file(fh.read(), args.file)
    except OSError as e:
        err.write("cannot read input: %s\n" % e)
        return 2
    except (ParseError, CurveFileError) as e:
        err.write("parse error: %s\n" % e)
        return 2
    if args.fix:
        try:
            with open(args.fix) as fh:
                fixed = parse_curve_file("vars: x y z\ncurve: x\npartition:\n" +
                                         "".join("  " + l + "\n" for l in fh.read().splitlines()
                                                 if l.strip()), args.fix)
            cf.partition = fixed.partition
            cf.aux = fixed.aux
            cf.aux_curve = fixed.aux_curve
        except (OSError, ParseError, CurveFileError) as e:
            err.write("cannot read partition file: %s\n" % e)
            return 2
    try:
        if cf.field != QQ:
            raise AnalysisError(
                "curve analysis over an extension field is not supported; "
                "flatten the input to rational coefficients"
            )
        if len(cf.vars) != 3:
            raise AnalysisError("curve analysis needs three projective variables")
        curve = ProjectiveCurve(cf.curve)
        points = curve.singular_points()
        if cf.points:
            given = {tuple(format_scalar(c) for c in pt) for pt in cf.points}
            found = {tuple(format_scalar(c) for c in p.coords) for p in points}
            missing = given - found
            if missing:
                raise AnalysisError("declared points not found singular: %s" % sorted(missing))
        reports = []
        for c in wanted:
            if c in ("3d-ea", "3d-es"):
                reports.append(criterion_3d(curve, c[-2:]))
            elif c in ("4d-ea", "4d-es"):
                reports.append(criterion_4d(curve, c[-2:], seed=args.seed))
            elif c in ("surface-ea", "surface-es"):
                if not cf.surface:
                    raise AnalysisError("surface criteria need a 'surface:' block")
                sd = SurfaceData(
                    kc=cf.surface.get("kc"),
                    cc=cf.surface.get("cc"),
                    c2=cf.surface.get("c2"),
                    pa=cf.surface.get("pa"),
                    pa_i=cf.surface.get("pa_i"),
                )
                reports.append(criterion_surface(sd, points, c[-2:]))
            else:  # mixed
                partition = _normalize_partition_keys(cf, points)
                if not cf.partition:
                    partition = {p.label(): "analytic" for p in points}
                reports.append(
                    criterion_mixed(curve, partition, cf.aux, seed=args.seed,
                                    aux_curve=cf.aux_curve)
                )
        resolutions = None
        if args.dump_resolution:
            resolutions = {
                p.label(): resolve(p.germ).to_json_obj() for p in points
            }
        obj = analysis_json_obj(args.file, args.seed, curve, points, reports, resolutions)
        text = render_json(obj) if args.format == "json" else render_text(obj)
        out.write(text)
        return 0 if any(r.certified() for r in reports) else 1
    except (AnalysisError, ParseError, ValueError) as e:
        err.write("analysis error: %s\n" % e)
        return 2


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
