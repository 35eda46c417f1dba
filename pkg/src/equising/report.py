"""Rendering of analysis results as stable JSON or readable text."""
from __future__ import annotations

import json

from .textio import format_poly


def analysis_json_obj(path, seed, curve, points, reports, resolutions=None):
    obj = {
        "input": {
            "path": path,
            "seed": seed,
            "degree": curve.degree,
            "curve": format_poly(curve.F),
            "components": [
                {"index": i, "degree": curve.comp_degrees[i], "equation": format_poly(c)}
                for i, c in enumerate(curve.components)
            ],
        },
        "singularPoints": [
            {
                "point": p.label(),
                "conjugacy": p.conj,
                "components": list(p.mask),
                "invariants": p.record.to_json_obj(),
            }
            for p in points
        ],
        "reports": [r.to_json_obj() for r in reports],
    }
    if resolutions is not None:
        obj["resolutions"] = resolutions
    return obj


def render_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def render_text(obj):
    lines = []
    inp = obj["input"]
    lines.append("curve of degree %d: %s" % (inp["degree"], inp["curve"]))
    for c in inp["components"]:
        lines.append("  component %d (degree %d): %s" % (c["index"], c["degree"], c["equation"]))
    pts = obj["singularPoints"]
    lines.append("singular points: %d" % len(pts))
    for p in pts:
        inv = p["invariants"]
        tau_es = inv["tauEs"] if inv["tauEs"] is not None else "unknown"
        lines.append(
            "  %s%s  %s: m=%d mu=%d tau=%d tau_es=%s delta=%d branches=%d"
            % (
                p["point"],
                " (x%d)" % p["conjugacy"] if p["conjugacy"] > 1 else "",
                inv["class"],
                inv["multiplicity"],
                inv["mu"],
                inv["tau"],
                tau_es,
                inv["delta"],
                inv["branches"],
            )
        )
    for r in obj["reports"]:
        lines.append("criterion %s (%s): %s" % (r["criterion"], r["scheme"], r["verdict"]))
        for c in r["perComponent"]:
            lines.append(
                "  component %s: %d > %d  %s"
                % (c["component"], c["lhs"], c["rhs"], "ok" if c["satisfied"] else "FAILS")
            )
            for e in c["isodSources"]:
                mark = "=" if e["exactness"] == "exact" else ">="
                lines.append(
                    "    isod %s %d at %s  [%s]" % (mark, e["value"], e["point"], e["source"])
                )
        if r["dimension"] is not None:
            lines.append("  smooth of dimension %d" % r["dimension"])
        for d in r["diagnostics"]:
            lines.append("  ! %s" % d)
        for n in r["notes"]:
            lines.append("  note: %s" % n)
        for cv in r["caveats"]:
            lines.append("  caveat: %s" % cv)
    return "\n".join(lines) + "\n"
