"""Global analysis of reduced projective plane curves and the smoothness
criteria for the families fixing analytic or topological singularity types.

The pipeline: factor the defining form over Q, locate all singular points by
resultant elimination (points may have coordinates in one simple extension;
conjugate points are stored once with a conjugacy degree), analyze the local
germ at every point, and evaluate the per-component or polar inequalities
whose validity certifies that the corresponding locally closed subscheme of
the Hilbert scheme is smooth of the expected dimension at the curve.

Every inequality is strict and every isomorphism-defect value enters with a
sound lower bound when no exact table applies, so a certified verdict is
never produced from optimistic data.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield

from .fields import QQ, NumberField, rational
from .germ import CurveGerm
from .invariants import SingularityRecord, tau, tau_es_tensor_component
from .isod import IsodValue, isod_ea, isod_ea_component, isod_es, isod_es_component, isod_polar
from .poly import Poly, divexact, factor_rational, factor_univariate_rational, gcd_poly, is_squarefree
from .textio import format_poly, format_scalar

PROJ_VARS = ("x", "y", "z")


class AnalysisError(ValueError):
    pass


class ConcurrentLinesError(AnalysisError):
    pass


class TowerPointError(AnalysisError):
    pass


class MixedConditionError(AnalysisError):
    def __init__(self, condition, detail):
        super().__init__("auxiliary-curve condition (%s) violated: %s" % (condition, detail))
        self.condition = condition


# ----------------------------------------------------------------------
# curve and singular-point containers


@dataclass
class SingularPoint:
    coords: tuple  # projective representative over `field`
    field: object
    conj: int
    chart: str  # which coordinate is 1 in the germ chart: 'x', 'y' or 'z'
    germ: CurveGerm
    record: SingularityRecord
    mask: tuple  # indices of components through the point
    comp_local: dict  # component index -> local equation (Poly in u, v)

    def label(self):
        parts = []
        for c in self.coords:
            parts.append(format_scalar(c) if not isinstance(c, (int,)) else str(c))
        s = "(%s)" % " : ".join(parts)
        if self.field != QQ:
            s += " [conjugacy %d]" % self.conj
        return s


class ProjectiveCurve:
    def __init__(self, F, components=None):
        if F.vars != PROJ_VARS:
            F = F.rename(PROJ_VARS)
        if F.field != QQ:
            raise AnalysisError("projective curve analysis needs rational coefficients")
        if F.is_zero() or F.is_constant():
            raise AnalysisError("the defining form must be a nonconstant polynomial")
        if not F.is_homogeneous():
            raise AnalysisError("the defining form is not homogeneous")
        self.F = F
        self.degree = F.total_degree()
        if components is None:
            from .poly import squarefree_factor

            _unit, sqf = squarefree_factor(F)
            bad = [g for g, e in sqf if e >= 2]
            if bad:
                raise AnalysisError(
                    "curve is not reduced; repeated factor: %s" % format_poly(bad[0])
                )
            components = factor_rational(F)
        self.components = components
        self.comp_degrees = [c.total_degree() for c in components]
        if sum(self.comp_degrees) != self.degree:
            raise AnalysisError("component degrees do not add up")
        self._singular = None

    def singular_points(self):
        if self._singular is None:
            self._singular = _singular_points(self)
        return self._singular


def decompose(F):
    """Factor a squarefree homogeneous form over Q into components."""
    return ProjectiveCurve(F)


# ----------------------------------------------------------------------
# singular point location


def _affine_from_chart(F, chart):
    """Affine equation in vars (x, y) with the chart coordinate set to 1."""
    x, y, z = (Poly.var(v, PROJ_VARS, F.field) for v in PROJ_VARS)
    one = Poly.const(1, PROJ_VARS, F.field)
    if chart == "z":
        g = F.substitute({"z": one})
        keep = ("x", "y")
    elif chart == "x":
        g = F.substitute({"x": one})
        keep = ("y", "z")
    else:
        g = F.substitute({"y": one})
        keep = ("x", "z")
    idx = [PROJ_VARS.index(v) for v in keep]
    terms = {}
    for e, c in g.terms.items():
        terms[(e[idx[0]], e[idx[1]])] = c
    return Poly(("x", "y"), terms, F.field)


def _point_coords_from_chart(chart, a, b, field):
    one = field.one()
    if chart == "z":
        return (a, b, one)
    if chart == "x":
        return (one, a, b)
    return (a, one, b)


def _translate_to_origin(f, a, b):
    x = Poly.var("x", ("x", "y"), f.field)
    y = Poly.var("y", ("x", "y"), f.field)
    return f.substitute(
        {"x": x + Poly.const(a, ("x", "y"), f.field), "y": y + Poly.const(b, ("x", "y"), f.field)}
    )


def _uni_gcd3(polys, name):
    from .poly import gcd_univariate

    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p if g is None else gcd_univariate(g, p, name)
        if g.degree_in(name) == 0 and not g.is_zero():
            break
    return g


def _squarefree_part_univariate(p, name):
    from .poly import gcd_univariate

    d = p.derivative(name)
    if d.is_zero():
        return p
    g = gcd_univariate(p, d, name)
    if g.degree_in(name) == 0:
        return p
    return divexact(p, g)


def _affine_singular_points(curve, shear):
    """Singular points in the chart z=1, after the shear x -> x + shear*y.

    Returns a list of (field, conj, x0, y0) with y0 in the same field as x0;
    raises TowerPointError if separating coordinates fails for this shear."""
    F = curve.F
    f = _affine_from_chart(F, "z")
    if shear:
        x = Poly.var("x", ("x", "y"), QQ)
        y = Poly.var("y", ("x", "y"), QQ)
        f = f.substitute({"x": x + y.scale(shear)})
    fx, fy = f.derivative("x"), f.derivative("y")
    if fx.is_zero() and fy.is_zero():
        raise AnalysisError("degenerate defining form")
    out = []
    if f.degree_in("y") == 0 or fx.is_zero() or fy.is_zero():
        # the affine curve is a union of parallel lines in this direction;
        # it has no affine singular points when squarefree
        return out
    from .poly import resultant

    # A resultant degenerates to 0 when the pair shares a factor involving y
    # (for example a component y = const kills res_y(f, f_x)); every singular
    # x-coordinate is a root of each nonzero one, so the gcd of those is a
    # finite candidate set and the y-stage gcd filters any spurious roots.
    cands = []
    for a, b in ((f, fx), (f, fy), (fx, fy)):
        if a.degree_in("y") == 0 and b.degree_in("y") == 0:
            continue
        r = resultant(a, b, "y")
        if not r.is_zero():
            cands.append(r)
    if not cands:
        raise AnalysisError("resultant elimination degenerated (non-reduced input?)")
    R = cands[0]
    for r in cands[1:]:
        R = gcd_poly(R, r)
        if R.is_constant():
            break
    R = Poly(("x", "y"), {(e[0], 0): c for e, c in R.terms.items()}, QQ)
    if R.is_constant():
        return out
    R = _squarefree_part_univariate(R, "x")
    for fac, _m in factor_univariate_rational(R, "x"):
        dx = fac.degree_in("x")
        if dx == 0:
            continue
        if dx == 1:
            a1 = fac.coeff((1, 0))
            a0 = fac.coeff((0, 0))
            x0 = -a0 / a1
            uni = [
                Poly.from_univariate(
                    [c.eval_scalars((x0,)) for c in h.as_univariate("y")], "y", ("x", "y"), QQ
                )
                for h in (f, fx, fy)
            ]
            g = _uni_gcd3(uni, "y")
            if g is None or g.degree_in("y") == 0:
                continue
            for yfac, _ in factor_univariate_rational(g, "y"):
                dy = yfac.degree_in("y")
                if dy == 0:
                    continue
                if dy == 1:
                    y0 = -yfac.coeff((0, 0)) / yfac.coeff((0, 1))
                    out.append((QQ, 1, x0, y0))
                else:
                    K = NumberField(
                        _monic_coeff_tuple(yfac, "y"), check_irreducible=False
                    )
                    out.append((K, K.degree, K.coerce(x0), K.gen()))
        else:
            K = NumberField(_monic_coeff_tuple(fac, "x"), check_irreducible=False)
            theta = K.gen()
            uni = []
            for h in (f, fx, fy):
                coeffs = [c.lift(K).eval_scalars((theta,)) for c in h.as_univariate("y")]
                uni.append(Poly.from_univariate(coeffs, "y", ("x", "y"), K))
            g = _uni_gcd3(uni, "y")
            if g is None or g.degree_in("y") == 0:
                continue
            g = _squarefree_part_univariate(g, "y")
            if g.degree_in("y") != 1:
                raise TowerPointError(
                    "singular points over x-root of %s need a second extension; "
                    "residual polynomial %s" % (format_poly(fac), format_poly(g))
                )
            y0 = -g.coeff((0, 0)) * K.inv(g.coeff((0, 1)))
            out.append((K, K.degree, theta, y0))
    if shear:
        mapped = []
        for field, conj, x0, y0 in out:
            s = field.coerce(rational(shear))
            mapped.append((field, conj, x0 - s * y0, y0))
        out = mapped
    return out


def _monic_coeff_tuple(fac, name):
    d = fac.degree_in(name)
    i = fac.vars.index(name)

    def coeff(k):
        e = [0, 0]
        e[i] = k
        return fac.coeff(tuple(e))

    lead = coeff(d)
    return tuple(c / lead for c in (coeff(k) for k in range(d + 1)))


def _infinity_singular_points(curve):
    """Singular points on the line z = 0, as (field, conj, chart, a, b)."""
    F = curve.F
    out = []
    z0 = Poly.const(0, PROJ_VARS, QQ)
    forms = []
    for v in PROJ_VARS:
        forms.append(F.derivative(v).substitute({"z": z0}))
    nonzero = [g for g in forms if not g.is_zero()]
    if not nonzero:
        raise AnalysisError("all partials vanish on z = 0; input not reduced")
    g = nonzero[0]
    for h in nonzero[1:]:
        g = gcd_poly(g, h)
        if g.is_constant():
            return out
    if g.is_constant():
        return out
    # direction (0 : 1 : 0)
    if g.eval_scalars((rational(0), rational(1), rational(0))) == 0:
        out.append((QQ, 1, "y", rational(0), rational(0)))
    # directions (1 : s : 0): roots of g(1, s, 0)
    s_poly = g.substitute(
        {"x": Poly.const(1, PROJ_VARS, QQ), "z": Poly.const(0, PROJ_VARS, QQ)}
    )
    if s_poly.is_constant():
        return out
    uni = Poly(("x", "y"), {(0, e[1]): c for e, c in s_poly.terms.items()}, QQ)
    for fac, _m in factor_univariate_rational(uni, "y"):
        d = fac.degree_in("y")
        if d == 0:
            continue
        if d == 1:
            s0 = -fac.coeff((0, 0)) / fac.coeff((0, 1))
            out.append((QQ, 1, "x", s0, rational(0)))
        else:
            K = NumberField(_monic_coeff_tuple(fac, "y"), check_irreducible=False)
            out.append((K, K.degree, "x", K.gen(), K.coerce(0)))
    return out


def _singular_points(curve):
    F = curve.F
    affine = None
    last_err = None
    for shear in (0, 1, -1, 2, -2, 3):
        try:
            affine = _affine_singular_points(curve, shear)
            break
        except TowerPointError as e:
            last_err = e
    if affine is None:
        raise last_err
    located = [("z", field, conj, a, b) for (field, conj, a, b) in affine]
    located += [
        (chart, field, conj, a, b) for (field, conj, chart, a, b) in _infinity_singular_points(curve)
    ]
    points = []
    for chart, field, conj, a, b in located:
        coords = _point_coords_from_chart(chart, field.coerce(a), field.coerce(b), field)
        fa = _affine_from_chart(F, chart)
        if field != QQ:
            fa = fa.lift(field)
        local = _translate_to_origin(fa, a, b)
        germ = CurveGerm(local.rename(("u", "v")), label=_coords_label(coords, field))
        if germ.multiplicity() < 2:
            continue  # spurious elimination candidate
        record = SingularityRecord.analyze(germ)
        mask = []
        comp_local = {}
        for i, Fi in enumerate(curve.components):
            val = Fi.lift(field).eval_scalars(coords) if field != QQ else Fi.eval_scalars(coords)
            if val == 0:
                mask.append(i)
                fai = _affine_from_chart(Fi, chart)
                if field != QQ:
                    fai = fai.lift(field)
                comp_local[i] = _translate_to_origin(fai, a, b).rename(("u", "v"))
        if not mask:
            raise AnalysisError("singular point misses every component")
        points.append(
            SingularPoint(coords, field, conj, chart, germ, record, tuple(mask), comp_local)
        )
    points.sort(key=lambda p: p.label())
    return points


def _coords_label(coords, field):
    return "(%s)" % " : ".join(format_scalar(c) for c in coords)


# ----------------------------------------------------------------------
# generic polar


def hessian_determinant(F):
    rows = []
    for v1 in PROJ_VARS:
        rows.append([F.derivative(v1).derivative(v2) for v2 in PROJ_VARS])
    det = (
        rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
    )
    return det


def is_concurrent_lines(curve):
    """d >= 3 lines through one point, detected via the Hessian covariant."""
    if curve.degree < 3:
        return False
    return hessian_determinant(curve.F).is_zero()


def _matrix_inverse_3x3(M):
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise AnalysisError("singular coordinate transform")
    adj = [
        [(e * i - f * h), -(b * i - c * h), (b * f - c * e)],
        [-(d * i - f * g), (a * i - c * g), -(a * f - c * d)],
        [(d * h - e * g), -(a * h - b * g), (a * e - b * d)],
    ]
    return [[rational(x) / rational(det) for x in row] for row in adj]


def _apply_matrix_to_point(M, coords, field):
    out = []
    for row in M:
        s = field.coerce(0)
        for m, c in zip(row, coords):
            s = s + field.coerce(rational(m)) * c
        out.append(s)
    return tuple(out)


def _transform_form(F, Minv):
    """F(M^-1 X) for an integer matrix inverse given over Q."""
    imgs = {}
    for i, v in enumerate(PROJ_VARS):
        img = Poly.zero(PROJ_VARS, QQ)
        for j, w in enumerate(PROJ_VARS):
            img = img + Poly.var(w, PROJ_VARS, QQ).scale(Minv[i][j])
        imgs[v] = img
    return F.substitute(imgs)


@dataclass
class PolarData:
    polar: Poly  # homogeneous form of degree d-1 in the transformed coordinates
    alpha: int
    beta: int
    transform: list  # row matrix M, new coords = M * old
    germs: dict  # index into singular point list -> CurveGerm of the polar
    caveats: list
    curve_form: Poly = None  # the curve itself in the transformed coordinates
    affine_coords: list = None  # (x, y) of each singular point, chart z'=1


def generic_polar(curve, seed=0):
    """Generic polar with verified consequences.

    Picks coordinates with all singular points off the line at infinity,
    draws small random (alpha, beta) from the seed, and retries until the
    polar is reduced, irreducible over Q, and its germ at every singular
    point has the generically expected shape (multiplicity one less; for
    ordinary points again a full squarefree tangent cone)."""
    if is_concurrent_lines(curve):
        raise ConcurrentLinesError(
            "the curve is a union of %d concurrent lines; no generic polar" % curve.degree
        )
    pts = curve.singular_points()
    rng = random.Random(seed)
    M = _choose_coordinates(pts)
    Minv = _matrix_inverse_3x3(M)
    Fp = _transform_form(curve.F, Minv) if M != _IDENTITY else curve.F
    new_coords = []
    for p in pts:
        c = _apply_matrix_to_point(M, p.coords, p.field) if M != _IDENTITY else p.coords
        zc = c[2]
        if zc == 0:
            raise AnalysisError("coordinate choice left a singular point at infinity")
        inv = (1 / zc) if p.field == QQ else p.field.inv(zc)
        new_coords.append((c[0] * inv, c[1] * inv))
    fx = Fp.derivative("x")
    fy = Fp.derivative("y")
    caveats = ["polarAbsolutelyIrreducibleAssumed", "structureSheafReplacesDualizingSheaf"]
    last_reason = "no draws attempted"
    for _attempt in range(40):
        alpha = rng.randint(-9, 9)
        beta = rng.randint(-9, 9)
        if alpha == 0 or beta == 0:
            continue
        P = fx.scale(alpha) + fy.scale(beta)
        if P.is_zero() or P.total_degree() != curve.degree - 1:
            last_reason = "degenerate polar form"
            continue
        if not is_squarefree(P):
            last_reason = "polar not reduced"
            continue
        if len(factor_rational(P)) != 1:
            last_reason = "polar reducible over Q"
            continue
        germs = {}
        ok = True
        pa0 = _affine_from_chart(P, "z")
        for idx, p in enumerate(pts):
            a, b = new_coords[idx]
            pa = pa0.lift(p.field) if p.field != QQ else pa0
            loc = _translate_to_origin(pa, a, b).rename(("u", "v"))
            if loc.constant_value() != 0:
                raise AnalysisError("polar misses a singular point")
            expected = p.record.m - 1
            if loc.min_degree() != expected:
                ok = False
                last_reason = "polar germ multiplicity off at %s" % p.label()
                break
            tag = p.record.class_tag
            if tag.ordinary and expected >= 1:
                from .invariants import _tangent_cone_squarefree_full

                if expected >= 2 and not _tangent_cone_squarefree_full(
                    CurveGerm(loc, check=False)
                ):
                    ok = False
                    last_reason = "polar germ not ordinary at %s" % p.label()
                    break
            germs[idx] = CurveGerm(loc, label="polar at %s" % p.label(), check=False)
        if not ok:
            continue
        return PolarData(P, alpha, beta, M, germs, caveats, Fp, new_coords)
    raise AnalysisError("generic polar retry budget exhausted: %s" % last_reason)


_IDENTITY = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def _choose_coordinates(pts):
    """A rational change of coordinates putting all singular points into the
    affine chart z != 0 (identity whenever possible)."""
    candidates = [
        (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1), (1, -1, 1), (1, 2, 1),
        (2, 1, 1), (1, 1, -1), (3, 1, 1), (1, 3, 1), (1, 1, 2), (2, 3, 1),
    ]
    for L in candidates:
        good = True
        for p in pts:
            val = p.field.coerce(0)
            for li, c in zip(L, p.coords):
                val = val + p.field.coerce(li) * c
            if val == 0:
                good = False
                break
        if good:
            if L == (0, 0, 1):
                return _IDENTITY
            k = max(i for i in range(3) if L[i] != 0)
            rows = [[1 if j == i else 0 for j in range(3)] for i in range(3) if i != k]
            return [rows[0], rows[1], list(L)]
    raise AnalysisError("could not find a line avoiding all singular points")


# ----------------------------------------------------------------------
# criterion reports


@dataclass
class ComponentLine:
    component: object  # index or 'all'
    lhs: int
    rhs: int
    satisfied: bool
    isod_entries: list = dfield(default_factory=list)

    def to_json_obj(self):
        return {
            "component": self.component,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "isodSources": self.isod_entries,
        }


@dataclass
class CriterionReport:
    criterion: str
    scheme: str
    per_component: list
    verdict: str
    dimension: object
    caveats: list = dfield(default_factory=list)
    diagnostics: list = dfield(default_factory=list)
    notes: list = dfield(default_factory=list)

    def certified(self):
        return self.verdict == "smoothCertified"

    def to_json_obj(self):
        return {
            "criterion": self.criterion,
            "scheme": self.scheme,
            "perComponent": [c.to_json_obj() for c in self.per_component],
            "verdict": self.verdict,
            "dimension": self.dimension,
            "caveats": sorted(self.caveats),
            "diagnostics": self.diagnostics,
            "notes": sorted(self.notes),
        }


def _expected_dimension_p2(d, tau_total):
    return d * (d + 3) // 2 - tau_total


def _total_tau(pts, kind):
    total = 0
    for p in pts:
        t = p.record.tau if kind == "ea" else p.record.tau_es
        if t is None:
            return None
        total += p.conj * t
    return total


def _smooth_curve_report(criterion, scheme, d):
    return CriterionReport(
        criterion,
        scheme,
        [ComponentLine("all", 1, 0, True)],
        "smoothCertified",
        _expected_dimension_p2(d, 0),
        notes=["curve is smooth; no local conditions are imposed"],
    )


def _isod_entry(point, iv):
    e = iv.to_json_obj()
    e["point"] = point.label()
    return e


def criterion_3d(curve, kind):
    """Per-component criterion on the projective plane."""
    if kind not in ("ea", "es"):
        raise AnalysisError("criterion kind must be 'ea' or 'es'")
    name = "3d-%s" % kind
    scheme = "H^ea" if kind == "ea" else "H^es"
    d = curve.degree
    pts = curve.singular_points()
    if not pts:
        return _smooth_curve_report(name, scheme, d)
    if kind == "es":
        missing = [p.label() for p in pts if p.record.tau_es is None]
        if missing:
            return CriterionReport(
                name, scheme, [], "notDecided", None,
                diagnostics=[
                    "topological criterion undecidable: no closed deformation ideal at %s" % m
                    for m in missing
                ],
            )
    lines = []
    for i, Fi in enumerate(curve.components):
        di = curve.comp_degrees[i]
        lhs = 3 * di
        rhs = 0
        entries = []
        if kind == "ea":
            rhs += di * (d - di)
            for p in pts:
                if i not in p.mask:
                    continue
                comp_eq = p.comp_local[i]
                if comp_eq.min_degree() >= 2:
                    rhs += p.conj * tau(CurveGerm(comp_eq, label=p.label()))
                iv = isod_ea_component(p.germ, comp_eq)
                rhs -= p.conj * iv.value
                entries.append(_isod_entry(p, iv))
        else:
            for p in pts:
                if i not in p.mask:
                    continue
                comp_eq = p.comp_local[i]
                tens = tau_es_tensor_component(p.germ, comp_eq)
                rhs += p.conj * tens
                iv = isod_es_component(p.germ, comp_eq)
                rhs -= p.conj * iv.value
                entries.append(_isod_entry(p, iv))
        lines.append(ComponentLine(i, lhs, rhs, lhs > rhs, entries))
    tau_total = _total_tau(pts, kind)
    ok = all(l.satisfied for l in lines)
    notes = []
    if ok and kind == "ea":
        notes.append(
            "every independent local deformation is realized by nearby curves of the same degree"
        )
    return CriterionReport(
        name, scheme, lines,
        "smoothCertified" if ok else "notDecided",
        _expected_dimension_p2(d, tau_total) if ok else None,
        notes=notes,
    )


def criterion_4d(curve, kind, seed=0):
    """Global polar criterion on the projective plane."""
    if kind not in ("ea", "es"):
        raise AnalysisError("criterion kind must be 'ea' or 'es'")
    name = "4d-%s" % kind
    scheme = "H^ea" if kind == "ea" else "H^es"
    d = curve.degree
    pts = curve.singular_points()
    if not pts:
        return _smooth_curve_report(name, scheme, d)
    tau_total = _total_tau(pts, kind)
    if tau_total is None:
        missing = [p.label() for p in pts if p.record.tau_es is None]
        return CriterionReport(
            name, scheme, [], "notDecided", None,
            diagnostics=[
                "topological criterion undecidable: no closed deformation ideal at %s" % m
                for m in missing
            ],
        )
    polar = generic_polar(curve, seed)
    isod_sum = 0
    entries = []
    for idx, p in enumerate(pts):
        iv = isod_polar(p.germ, polar.germs[idx], kind)
        isod_sum += p.conj * iv.value
        entries.append(_isod_entry(p, iv))
    lhs = 4 * d
    rhs = 4 + tau_total - isod_sum
    ok = lhs > rhs
    notes = []
    if ok and kind == "ea":
        notes.append(
            "every independent local deformation is realized by nearby curves of the same degree"
        )
    return CriterionReport(
        name, scheme, [ComponentLine("all", lhs, rhs, ok, entries)],
        "smoothCertified" if ok else "notDecided",
        _expected_dimension_p2(d, tau_total) if ok else None,
        caveats=list(polar.caveats),
        notes=notes,
    )


def criterion_mixed(curve, partition, auxiliary="polar", seed=0, aux_curve=None):
    """Mixed criterion: fix the analytic type at some points, the topological
    type at others, leave the rest free, against an auxiliary curve.

    auxiliary: 'polar' (generic polar), 'self' (the curve itself; must be
    irreducible), or 'explicit' with aux_curve a homogeneous form."""
    d = curve.degree
    pts = curve.singular_points()
    labels = {p.label(): p for p in pts}
    cats = {}
    for idx, p in enumerate(pts):
        c = partition.get(p.label(), partition.get(idx, "free"))
        if c not in ("analytic", "topological", "free"):
            raise AnalysisError("unknown partition category %r" % c)
        cats[idx] = c
    polar = None
    if auxiliary == "polar":
        polar = generic_polar(curve, seed)
        aux_form = polar.polar
        d_aux = d - 1
        transform = polar.transform
    elif auxiliary == "self":
        aux_form = curve.F
        d_aux = d
        transform = _IDENTITY
    elif auxiliary == "explicit":
        if aux_curve is None:
            raise AnalysisError("explicit auxiliary requested without a curve")
        aux_form = aux_curve if aux_curve.vars == PROJ_VARS else aux_curve.rename(PROJ_VARS)
        if not aux_form.is_homogeneous():
            raise MixedConditionError("a", "auxiliary form is not homogeneous")
        d_aux = aux_form.total_degree()
        transform = _IDENTITY
    else:
        raise AnalysisError("unknown auxiliary %r" % auxiliary)
    # condition (a): irreducibility over Q
    caveats = ["polarAbsolutelyIrreducibleAssumed"]
    if auxiliary == "explicit":
        if len(factor_rational(aux_form)) != 1:
            raise MixedConditionError("a", "auxiliary curve is reducible over Q")
    if auxiliary == "self" and len(curve.components) != 1:
        raise MixedConditionError("a", "the curve itself is reducible; cannot serve as auxiliary")
    # conditions (b) and (c) at the fixed points
    entries = []
    tau_prime = 0
    isod_sum = 0
    for idx, p in enumerate(pts):
        cat = cats[idx]
        if cat == "free":
            continue
        if auxiliary == "polar":
            aux_germ = polar.germs[idx]
            if polar.transform == _IDENTITY:
                check_germ = p.germ
            else:
                ca = _affine_from_chart(polar.curve_form, "z")
                if p.field != QQ:
                    ca = ca.lift(p.field)
                a, b = polar.affine_coords[idx]
                check_germ = CurveGerm(
                    _translate_to_origin(ca, a, b).rename(("u", "v")), label=p.label()
                )
        else:
            pa = _affine_from_chart(aux_form, p.chart)
            if p.field != QQ:
                pa = pa.lift(p.field)
            a, b = _affine_coords_in_chart(p)
            loc = _translate_to_origin(pa, a, b).rename(("u", "v"))
            if loc.constant_value() != 0:
                raise MixedConditionError("b", "auxiliary curve misses fixed point %s" % p.label())
            aux_germ = CurveGerm(loc, label="auxiliary at %s" % p.label(), check=False)
            check_germ = p.germ
        _check_local_membership(check_germ, aux_germ, cat, p.label())
        if cat == "analytic":
            tau_prime += p.conj * p.record.tau
            iv = (
                isod_polar(p.germ, aux_germ, "ea")
                if auxiliary == "polar"
                else isod_ea(p.germ)
                if auxiliary == "self"
                else IsodValue(0, False, "auxiliary-default-bound")
            )
        else:
            te = p.record.tau_es
            if te is None:
                return CriterionReport(
                    "mixed", "H^{A,T}", [], "notDecided", None,
                    diagnostics=[
                        "topological type fixed at %s but no closed deformation ideal" % p.label()
                    ],
                )
            tau_prime += p.conj * te
            iv = (
                isod_polar(p.germ, aux_germ, "es")
                if auxiliary == "polar"
                else isod_es(p.germ)
                if auxiliary == "self"
                else IsodValue(0, False, "auxiliary-default-bound")
            )
        isod_sum += p.conj * iv.value
        entries.append(_isod_entry(p, iv))
    lhs = d_aux * (d - d_aux + 3)
    rhs = tau_prime - isod_sum
    ok = lhs > rhs
    return CriterionReport(
        "mixed", "H^{A,T}",
        [ComponentLine("all", lhs, rhs, ok, entries)],
        "smoothCertified" if ok else "notDecided",
        d * (d + 3) // 2 - tau_prime if ok else None,
        caveats=caveats if auxiliary == "polar" else [],
    )


def _affine_coords_in_chart(p):
    c = p.coords
    if p.chart == "z":
        return c[0], c[1]
    if p.chart == "x":
        return c[1], c[2]
    return c[0], c[2]


def _check_local_membership(curve_germ, aux_germ, cat, label):
    """Condition (c): the local auxiliary equation lies in the Tjurina ideal
    (analytic points) or in the deformation ideal (topological points),
    verified by reduction to the normal form zero.  Both germs must be given
    in the same local coordinates."""
    from .invariants import equisingularity_ideal_generators, tjurina_generators
    from .localstd import std_basis

    f_aux = aux_germ.equation
    if cat == "analytic":
        gens = tjurina_generators(curve_germ)
    else:
        gens = equisingularity_ideal_generators(curve_germ)
        if gens is None:
            raise MixedConditionError("c", "no closed deformation ideal at %s" % label)
    if f_aux.field != gens[0].field:
        if f_aux.field == QQ:
            f_aux = f_aux.lift(gens[0].field)
        else:
            gens = [g.lift(f_aux.field) for g in gens]
    basis = std_basis(gens)
    if not basis.contains(f_aux):
        raise MixedConditionError(
            "c",
            "local auxiliary equation not in the %s ideal at %s"
            % ("Tjurina" if cat == "analytic" else "deformation", label),
        )


# ----------------------------------------------------------------------
# abstract smooth surfaces


@dataclass
class SurfaceData:
    """User-supplied intersection data for a smooth surface."""

    kc: list  # K_S . C_i per component
    cc: list  # matrix C_i . C_j
    c2: object = None  # C^2
    pa: object = None  # arithmetic genus of C
    pa_i: object = None  # list of arithmetic genera of the components

    def validate(self):
        n = len(self.kc)
        if len(self.cc) != n or any(len(row) != n for row in self.cc):
            raise AnalysisError("component intersection matrix has the wrong shape")
        for i in range(n):
            for j in range(n):
                if self.cc[i][j] != self.cc[j][i]:
                    raise AnalysisError("intersection matrix is not symmetric")
        if self.pa_i is not None:
            for i in range(n):
                if -self.kc[i] != self.cc[i][i] - 2 * self.pa_i[i] + 2:
                    raise AnalysisError(
                        "adjunction inconsistency for component %d" % i
                    )
        if self.c2 is not None:
            total = sum(self.cc[i][j] for i in range(n) for j in range(n))
            if total != self.c2:
                raise AnalysisError("C^2 does not match the intersection matrix")

    @staticmethod
    def for_p2(degrees):
        n = len(degrees)
        return SurfaceData(
            kc=[-3 * di for di in degrees],
            cc=[[degrees[i] * degrees[j] for j in range(n)] for i in range(n)],
            c2=sum(degrees) ** 2,
            pa=(sum(degrees) - 1) * (sum(degrees) - 2) // 2,
            pa_i=[(di - 1) * (di - 2) // 2 for di in degrees],
        )


def criterion_surface(surface, points, kind, criterion_name="surface"):
    """Per-component criterion over user-supplied surface data.

    ``points`` is a list of SingularPoint-like records (mask, conj, germ,
    record, comp_local).  With projective-plane data this coincides with the
    per-component plane criterion."""
    if kind not in ("ea", "es"):
        raise AnalysisError("criterion kind must be 'ea' or 'es'")
    surface.validate()
    name = "%s-%s" % (criterion_name, kind)
    scheme = "H^ea" if kind == "ea" else "H^es"
    n = len(surface.kc)
    if kind == "es":
        missing = [p.label() for p in points if p.record.tau_es is None]
        if missing:
            return CriterionReport(
                name, scheme, [], "notDecided", None,
                diagnostics=[
                    "topological criterion undecidable: no closed deformation ideal at %s" % m
                    for m in missing
                ],
            )
    lines = []
    for i in range(n):
        lhs = -surface.kc[i]
        rhs = 0
        entries = []
        if kind == "ea":
            rhs += sum(surface.cc[i][j] for j in range(n) if j != i)
            for p in points:
                if i not in p.mask:
                    continue
                comp_eq = p.comp_local[i]
                if comp_eq.min_degree() >= 2:
                    rhs += p.conj * tau(CurveGerm(comp_eq, label=p.label()))
                iv = isod_ea_component(p.germ, comp_eq)
                rhs -= p.conj * iv.value
                entries.append(_isod_entry(p, iv))
        else:
            for p in points:
                if i not in p.mask:
                    continue
                comp_eq = p.comp_local[i]
                rhs += p.conj * tau_es_tensor_component(p.germ, comp_eq)
                iv = isod_es_component(p.germ, comp_eq)
                rhs -= p.conj * iv.value
                entries.append(_isod_entry(p, iv))
        lines.append(ComponentLine(i, lhs, rhs, lhs > rhs, entries))
    ok = all(l.satisfied for l in lines)
    dimension = None
    if ok and surface.c2 is not None and surface.pa is not None:
        tau_total = _total_tau(points, kind)
        if tau_total is not None:
            dimension = surface.c2 + 1 - surface.pa - tau_total
    return CriterionReport(
        name, scheme, lines, "smoothCertified" if ok else "notDecided", dimension
    )
