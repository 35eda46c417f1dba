"""Curve-file parsing for the command line front end.

A curve file is line-oriented: `#` starts a comment, top-level headers are
`field:`, `vars:`, `curve:`, `points:`, and the block headers `surface:` and
`partition:` whose entries follow on indented lines.  Polynomials use the
grammar of :mod:`equising.textio`.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .fields import QQ, NumberField
from .textio import PolyParser, parse_poly


class CurveFileError(ValueError):
    pass


@dataclass
class CurveFile:
    field: object = QQ
    vars: tuple = ()
    curve: object = None
    points: list = dfield(default_factory=list)  # scalar coordinate triples
    surface: dict = dfield(default_factory=dict)
    partition: dict = dfield(default_factory=dict)
    aux: str = "polar"
    aux_curve: object = None


def _strip_comment(line):
    if "#" in line:
        line = line[: line.index("#")]
    return line.rstrip()


def _parse_field_header(text, lineno):
    # the modulus is written in the variable t, e.g.  field: t^2 - 2
    p = parse_poly(text, ("t",), QQ, line=lineno)
    d = p.degree_in("t")
    if d < 2:
        raise CurveFileError("line %d: field modulus must have degree >= 2" % lineno)
    coeffs = [p.coeff((k,)) for k in range(d + 1)]
    try:
        return NumberField(coeffs)
    except ValueError as e:
        raise CurveFileError("line %d: %s" % (lineno, e))


def _parse_point(text, parser, lineno):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise CurveFileError("line %d: point must look like (a : b : c)" % lineno)
    parts = text[1:-1].split(":")
    if len(parts) != 3:
        raise CurveFileError("line %d: point needs three coordinates" % lineno)
    coords = []
    for part in parts:
        p = parser.parse(part.strip(), lineno)
        if not p.is_constant():
            raise CurveFileError("line %d: point coordinates must be scalars" % lineno)
        coords.append(p.constant_value())
    return tuple(coords)


def parse_curve_file(text, path="<input>"):
    cf = CurveFile()
    lines = text.splitlines()
    block = None
    scalar_parser = None
    poly_parser = None
    for lineno, raw in enumerate(lines, start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indented = line[0] in " \t"
        body = line.strip()
        if not indented:
            block = None
            if ":" not in body:
                raise CurveFileError("line %d: expected 'key: value'" % lineno)
            key, _, val = body.partition(":")
            key = key.strip().lower()
            val = val.strip()
            if key == "field":
                cf.field = _parse_field_header(val, lineno)
            elif key == "vars":
                cf.vars = tuple(val.split())
                if len(cf.vars) not in (2, 3):
                    raise CurveFileError("line %d: need two or three variables" % lineno)
            elif key == "curve":
                if not cf.vars:
                    raise CurveFileError("line %d: 'vars:' must come before 'curve:'" % lineno)
                poly_parser = PolyParser(cf.vars, cf.field)
                cf.curve = poly_parser.parse(val, lineno)
            elif key == "points":
                import re

                scalar_parser = scalar_parser or PolyParser((), cf.field)
                for tok in re.findall(r"\([^()]*\)", val):
                    cf.points.append(_parse_point(tok, scalar_parser, lineno))
            elif key == "surface":
                block = "surface"
            elif key == "partition":
                block = "partition"
            else:
                raise CurveFileError("line %d: unknown header %r" % (lineno, key))
            continue
        # indented: block entry
        if block == "surface":
            if ":" not in body:
                raise CurveFileError("line %d: surface entries are 'key: values'" % lineno)
            key, _, val = body.partition(":")
            key = key.strip().lower()
            if key in ("kc", "pa_i"):
                cf.surface[key] = [int(tok) for tok in val.split()]
            elif key == "cc":
                cf.surface[key] = [
                    [int(tok) for tok in row.split()] for row in val.split(";") if row.strip()
                ]
            elif key in ("c2", "pa"):
                cf.surface[key] = int(val)
            else:
                raise CurveFileError("line %d: unknown surface entry %r" % (lineno, key))
        elif block == "partition":
            if body.lower().startswith("aux:"):
                val = body[4:].strip()
                if val in ("polar", "self"):
                    cf.aux = val
                else:
                    if poly_parser is None:
                        raise CurveFileError("line %d: aux curve needs 'vars:' first" % lineno)
                    cf.aux = "explicit"
                    cf.aux_curve = poly_parser.parse(val, lineno)
                continue
            if body.lower().startswith("default:"):
                cat = body.split(":", 1)[1].strip()
                cf.partition["__default__"] = cat
                continue
            if ")" not in body:
                raise CurveFileError("line %d: partition entries are '(point): category'" % lineno)
            pt, _, cat = body.rpartition(":")
            cf.partition[pt.strip()] = cat.strip()
        else:
            raise CurveFileError("line %d: unexpected indented line" % lineno)
    if cf.curve is None:
        raise CurveFileError("%s: no 'curve:' line found" % path)
    return cf
