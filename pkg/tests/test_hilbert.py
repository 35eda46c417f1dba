from __future__ import annotations

import random

import pytest

from equising.fields import rational
from equising.hilbert import (
    AnalysisError,
    ConcurrentLinesError,
    MixedConditionError,
    ProjectiveCurve,
    SurfaceData,
    criterion_3d,
    criterion_4d,
    criterion_mixed,
    criterion_surface,
    decompose,
    generic_polar,
    is_concurrent_lines,
)
from equising.invariants import _tangent_cone_squarefree_full
from equising.germ import CurveGerm
from equising.poly import Poly

from conftest import ppoly

V = ("x", "y", "z")


def test_decompose_three_lines():
    C = decompose(ppoly("x*y*z"))
    assert sorted(C.comp_degrees) == [1, 1, 1]


def test_decompose_product_curve(corpus_curves):
    C = corpus_curves["product7"]
    assert sorted(C.comp_degrees) == [1, 1, 1, 4]
    assert C.degree == 7


def test_decompose_rejects_nonreduced():
    with pytest.raises(AnalysisError) as ei:
        decompose(ppoly("(x + y)^2*z"))
    assert "x + y" in str(ei.value)


def test_decompose_rejects_inhomogeneous():
    with pytest.raises(AnalysisError):
        decompose(ppoly("x^2 + y"))


def test_smooth_conic_has_no_singular_points():
    C = decompose(ppoly("x^2 + y*z"))
    assert C.singular_points() == []


def test_single_deep_singularity(corpus_curves):
    pts = corpus_curves["deep9"].singular_points()
    assert len(pts) == 1
    p = pts[0]
    assert p.label() == "(0 : 0 : 1)"
    assert p.record.tau == 35
    assert p.record.class_tag.ade == ("A", 35)


def test_three_cusp_curve_point(corpus_curves):
    pts = corpus_curves["tricusp7"].singular_points()
    assert len(pts) == 1
    p = pts[0]
    assert p.label() == "(0 : 0 : 1)"
    assert not p.record.class_tag.quasihomogeneous
    assert p.record.tau < p.record.mu


def test_product_curve_census(corpus_curves):
    pts = corpus_curves["product7"].singular_points()
    total = sum(p.conj for p in pts)
    triples = sum(p.conj for p in pts if p.record.m == 3)
    nodes = sum(p.conj for p in pts if p.record.m == 2)
    assert (total, triples, nodes) == (10, 3, 7)
    assert all(p.record.class_tag.ordinary for p in pts)
    assert sum(p.conj * p.record.tau for p in pts) == 19
    # two node pairs are conjugate over a quadratic extension
    assert sorted(p.conj for p in pts) == [1, 1, 1, 1, 1, 1, 2, 2]


def test_singular_point_at_infinity():
    # two parallel lines meet at infinity in a node
    C = decompose(ppoly("x*(x + z)*y"))
    pts = C.singular_points()
    labels = sorted(p.label() for p in pts)
    assert "(0 : 1 : 0)" in labels  # x = 0 and x = -z meet at (0:1:0)


def test_generic_polar_properties(corpus_curves):
    C = corpus_curves["deep9"]
    polar = generic_polar(C, seed=5)
    assert polar.polar.total_degree() == C.degree - 1
    pts = C.singular_points()
    for idx, p in enumerate(pts):
        g = polar.germs[idx]
        assert g.equation.constant_value() == 0  # singular points lie on the polar
        assert g.equation.min_degree() == p.record.m - 1


def test_generic_polar_node_is_smooth():
    C = decompose(ppoly("y^2*z - x^3 - x^2*z"))  # nodal cubic
    pts = C.singular_points()
    assert len(pts) == 1 and pts[0].record.class_tag.ade == ("A", 1)
    polar = generic_polar(C, seed=3)
    assert polar.germs[0].equation.min_degree() == 1


def test_generic_polar_ordinary_point_shape():
    # quartic with an ordinary triple point; polar germ is an ordinary node
    C = decompose(ppoly("x^3*z - y^3*z + x^4 + y^4"))
    pts = C.singular_points()
    assert len(pts) == 1 and pts[0].record.class_tag.r == 3
    polar = generic_polar(C, seed=1)
    g = polar.germs[0]
    assert g.equation.min_degree() == 2
    assert _tangent_cone_squarefree_full(CurveGerm(g.equation, check=False))


def test_concurrent_lines_rejected():
    C = decompose(ppoly("x*y*(x + y)"))
    assert is_concurrent_lines(C)
    with pytest.raises(ConcurrentLinesError):
        generic_polar(C, seed=0)
    # three lines NOT through one point are fine
    C2 = decompose(ppoly("x*y*(x + y + z)"))
    assert not is_concurrent_lines(C2)


def test_3d_nodal_quartic():
    # irreducible quartic with 3 nodes: certified, dimension 14 - 3 = 11
    C = decompose(ppoly("x^2*y^2 + y^2*z^2 + x^2*z^2 + x*y*z*(x + y + z)"))
    pts = C.singular_points()
    assert sum(p.conj for p in pts) == 3
    assert all(p.record.class_tag.ade == ("A", 1) for p in pts)
    for kind in ("ea", "es"):
        r = criterion_3d(C, kind)
        assert r.verdict == "smoothCertified"
        assert r.dimension == 11
        line = r.per_component[0]
        assert line.lhs == 12 and line.rhs == 0


def test_4d_deep_singularity_pair(corpus_curves):
    r = criterion_4d(corpus_curves["deep9"], "ea", seed=1)
    assert r.verdict == "notDecided"
    assert (r.per_component[0].lhs, r.per_component[0].rhs) == (36, 39)
    r = criterion_4d(corpus_curves["deformed9"], "ea", seed=1)
    assert r.verdict == "smoothCertified"
    assert (r.per_component[0].lhs, r.per_component[0].rhs) == (36, 35)
    assert r.dimension == 23


def test_4d_es_needs_known_deformation_ideal(corpus_curves):
    r = criterion_4d(corpus_curves["tricusp7"], "es", seed=1)
    assert r.verdict == "notDecided"
    assert r.diagnostics


def test_surface_p2_specializes_to_3d(corpus_curves):
    for name in ("product7", "deep9", "deformed9", "tricusp7"):
        C = corpus_curves[name]
        sd = SurfaceData.for_p2(C.comp_degrees)
        pts = C.singular_points()
        for kind in ("ea", "es"):
            a = criterion_3d(C, kind)
            b = criterion_surface(sd, pts, kind)
            assert a.verdict == b.verdict, (name, kind)
            assert [l.to_json_obj() for l in a.per_component] == [
                l.to_json_obj() for l in b.per_component
            ], (name, kind)
            assert a.dimension == b.dimension


def test_3d_es_reduces_to_multiplicity_sums_for_ordinary_points(corpus_curves):
    # for a curve whose singularities are all ordinary multiple points the
    # topological per-component inequality reduces to
    #   3*d_i > sum of mult_x(C_i) over points of total multiplicity > 2
    C = corpus_curves["product7"]
    pts = C.singular_points()
    r = criterion_3d(C, "es")
    for line in r.per_component:
        i = line.component
        expected = 0
        for p in pts:
            if i in p.mask and p.record.m > 2:
                expected += p.conj * p.comp_local[i].min_degree()
        assert line.rhs == expected, i


def test_dimension_formula_cross_identity():
    # (d^2+3d)/2 = C^2 + 1 - p_a for plane curves of degree d
    for d in range(1, 12):
        c2 = d * d
        pa = (d - 1) * (d - 2) // 2
        assert d * (d + 3) // 2 == c2 + 1 - pa


def test_surface_adjunction_validation():
    sd = SurfaceData(kc=[-3], cc=[[1]], pa_i=[1])  # violates adjunction
    with pytest.raises(AnalysisError):
        sd.validate()
    SurfaceData.for_p2([2, 3]).validate()


def test_mixed_degenerate_partitions_reproduce_3d_4d(corpus_curves):
    for name in ("deep9", "deformed9"):
        C = corpus_curves[name]
        pts = C.singular_points()
        all_analytic = {p.label(): "analytic" for p in pts}
        all_topological = {p.label(): "topological" for p in pts}
        # polar auxiliary reproduces the global polar criterion
        for cats, kind in ((all_analytic, "ea"), (all_topological, "es")):
            a = criterion_mixed(C, cats, "polar", seed=1)
            b = criterion_4d(C, kind, seed=1)
            assert a.verdict == b.verdict, (name, kind)
            assert a.per_component[0].lhs == 4 * C.degree - 4
            assert a.per_component[0].lhs - a.per_component[0].rhs == (
                b.per_component[0].lhs - b.per_component[0].rhs
            ), (name, kind)
            assert a.dimension == b.dimension
        # the curve itself as auxiliary reproduces the per-component criterion
        # (these test curves are irreducible)
        for cats, kind in ((all_analytic, "ea"), (all_topological, "es")):
            a = criterion_mixed(C, cats, "self")
            b = criterion_3d(C, kind)
            assert a.verdict == b.verdict, (name, kind)
            assert a.dimension == b.dimension


def test_mixed_all_free_is_whole_space(corpus_curves):
    C = corpus_curves["deep9"]
    pts = C.singular_points()
    r = criterion_mixed(C, {p.label(): "free" for p in pts}, "polar", seed=1)
    assert r.verdict == "smoothCertified"
    assert r.dimension == C.degree * (C.degree + 3) // 2


def test_mixed_condition_b_violated(corpus_curves):
    C = corpus_curves["deep9"]
    pts = C.singular_points()
    aux = ppoly("x + y + z")  # misses (0:0:1)... passes through? 0+0+1 != 0
    with pytest.raises(MixedConditionError) as ei:
        criterion_mixed(C, {p.label(): "analytic" for p in pts}, "explicit", aux_curve=aux)
    assert ei.value.condition == "b"


def test_mixed_condition_a_violated(corpus_curves):
    C = corpus_curves["product7"]
    with pytest.raises(MixedConditionError) as ei:
        criterion_mixed(C, {}, "self")
    assert ei.value.condition == "a"


def test_certificates_degrade_monotonically(corpus_curves):
    # replacing any exact defect by a smaller bound must never flip a
    # notDecided verdict into a certificate: the inequality lhs > rhs with
    # rhs = base - sum(isod) can only get harder as values shrink
    C = corpus_curves["deformed9"]
    r = criterion_4d(C, "ea", seed=1)
    lhs = r.per_component[0].lhs
    rhs = r.per_component[0].rhs
    isods = [e["value"] for e in r.per_component[0].isod_entries]
    base = rhs + sum(isods)
    rng = random.Random(8)
    for _ in range(50):
        degraded = [rng.randint(0, v) if v > 0 else 0 for v in isods]
        rhs2 = base - sum(degraded)
        assert rhs2 >= rhs
        if not (lhs > rhs):
            assert not (lhs > rhs2)


def _random_nodal_curve(rng, d, nodes):
    """Random irreducible degree-d curve singular exactly at the given
    rational points, by solving the linear conditions exactly."""
    monos = [(a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)]
    rows = []
    for pt in nodes:
        for var in range(3):
            row = []
            for (a, b, c) in monos:
                e = (a, b, c)
                k = e[var]
                if k == 0:
                    row.append(rational(0))
                    continue
                shifted = list(e)
                shifted[var] -= 1
                coeff = rational(k)
                val = coeff
                for ex, coord in zip(shifted, pt):
                    val = val * coord**ex
                row.append(val)
            rows.append(row)
    # solve the homogeneous system: random element of the kernel
    n = len(monos)
    mat = [list(r) for r in rows]
    # gaussian elimination to reduced form, track pivots
    pivots = []
    ri = 0
    for col in range(n):
        piv = None
        for i in range(ri, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[ri], mat[piv] = mat[piv], mat[ri]
        pr = mat[ri]
        inv = rational(1) / pr[col]
        mat[ri] = [x * inv for x in pr]
        for i in range(len(mat)):
            if i != ri and mat[i][col] != 0:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[ri])]
        pivots.append(col)
        ri += 1
    free = [c for c in range(n) if c not in pivots]
    coeffs = [rational(0)] * n
    for c in free:
        coeffs[c] = rational(rng.randint(-4, 4))
    for row_i, col in enumerate(pivots):
        s = rational(0)
        for c in free:
            s = s - mat[row_i][c] * coeffs[c]
        coeffs[col] = s
    terms = {}
    for (a, b, c), v in zip(monos, coeffs):
        if v != 0:
            terms[(a, b, c)] = v
    return Poly(V, terms)


def test_severi_nodal_curves_randomized():
    # nodal curves: the per-component topological criterion certifies
    # smoothness of dimension d(d+3)/2 - (number of nodes)
    rng = random.Random(424242)
    cases = 0
    attempts = 0
    while cases < 4 and attempts < 60:
        attempts += 1
        d = rng.choice([3, 4, 4])
        k = 1 if d == 3 else rng.choice([2, 3])
        pts = [(rational(0), rational(0), rational(1)),
               (rational(0), rational(1), rational(0)),
               (rational(1), rational(0), rational(0))][:k]
        F = _random_nodal_curve(rng, d, pts)
        if F.is_zero() or F.total_degree() != d:
            continue
        try:
            C = ProjectiveCurve(F)
        except AnalysisError:
            continue
        if len(C.components) != 1:
            continue
        try:
            sing = C.singular_points()
        except AnalysisError:
            continue
        if sum(p.conj for p in sing) != k:
            continue
        if not all(p.record.class_tag.ade == ("A", 1) for p in sing):
            continue
        r = criterion_3d(C, "es")
        assert r.verdict == "smoothCertified"
        assert r.dimension == d * (d + 3) // 2 - k
        cases += 1
    assert cases == 4, "not enough random nodal curves generated"
