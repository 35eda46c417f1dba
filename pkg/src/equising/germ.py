"""Blow-up resolution of plane curve germs.

A germ is a squarefree local equation f(u,v) with f(0,0) = 0.  ``resolve``
produces the tree of infinitely near points of the minimal resolution that
stops once the reduced total transform (strict transform plus accumulated
exceptional curves) has only ordinary nodes.  The tree carries, per point,
the multiplicity of the strict transform, the proximity structure (which
earlier exceptional components pass through the point) and a conjugacy
degree so that points with coordinates in an extension of Q are stored once.

From the tree we read off the delta invariant, the number of branches and a
canonical encoding of the embedded topological type.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield

from .fields import QQ, NumberField
from .poly import Poly, gcd_poly, is_squarefree, factor_univariate_rational, squarefree_factor
from .localstd import NEGDEGREVLEX, colength

GERM_VARS = ("u", "v")


class GermError(ValueError):
    pass


class TowerError(GermError):
    """Raised when a resolution step would need a second extension layer."""


class CurveGerm:
    """A reduced plane curve germ at the origin.

    The equation is a polynomial representative in (u, v); reducedness
    (squarefreeness) is checked at construction, which for plane curves is
    exactly the condition for the singularity to be isolated.
    """

    def __init__(self, equation, label=None, check=True):
        if equation.vars != GERM_VARS:
            if len(equation.vars) != 2:
                raise GermError("a germ needs a two-variable equation")
            equation = equation.rename(GERM_VARS)
        if equation.is_zero():
            raise GermError("zero equation")
        if equation.constant_value() != 0:
            raise GermError("germ equation does not vanish at the origin")
        self.equation = equation
        self.field = equation.field
        self.label = label
        self._cache = {}
        if check and not is_squarefree(equation):
            raise GermError("germ equation is not reduced (squarefree check failed)%s"
                            % (" at %s" % label if label else ""))

    def multiplicity(self):
        return self.equation.min_degree()

    def is_smooth(self):
        return self.multiplicity() == 1

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __repr__(self):
        return "CurveGerm(%r)" % (self.equation,)


# ----------------------------------------------------------------------
# tangent directions


def _tangent_cone_coeffs(f):
    """Coefficients c_j of the degree-m form, c_j = coeff of u^(m-j) v^j."""
    m = f.min_degree()
    fm = f.lowest_part()
    return [fm.coeff((m - j, j)) for j in range(m + 1)], m


def _binary_discriminant_nonzero(c):
    """Two distinct projective roots for a binary quadric c0 u^2+c1 uv+c2 v^2."""
    d = c[1] * c[1] - 4 * c[0] * c[2]
    return d != 0


def _direction_data(f):
    """Directions of the tangent cone of f.

    Returns (rational_roots, clusters, has_vertical) where rational_roots are
    scalars t (direction v = t*u), clusters are monic irreducible minimal
    polynomials over Q of degree >= 2, and has_vertical flags the direction
    u = 0.  Over an extension field only roots in that field are allowed;
    anything needing a further extension raises TowerError.
    """
    coeffs, m = _tangent_cone_coeffs(f)
    field = f.field
    p = Poly.from_univariate(coeffs, "v", GERM_VARS, field)
    has_vertical = coeffs[m] == 0
    if p.is_zero():
        raise GermError("tangent cone vanished; equation not reduced")
    roots = []
    clusters = []
    if p.is_constant():
        return roots, clusters, has_vertical
    if field == QQ:
        for fac, _mult in factor_univariate_rational(p, "v"):
            d = fac.degree_in("v")
            if d == 0:
                continue
            if d == 1:
                a = fac.coeff((0, 1))
                b = fac.coeff((0, 0))
                roots.append(-b / a)
            else:
                uni = [fac.coeff((0, j)) for j in range(d + 1)]
                lead = uni[-1]
                clusters.append(tuple(c / lead for c in uni))
    else:
        _, sqf = squarefree_factor(p)
        for fac, _mult in sqf:
            d = fac.degree_in("v")
            if d == 0:
                continue
            if d > 1:
                raise TowerError(
                    "blow-up point needs a second field extension (factor of degree %d over %r)"
                    % (d, field)
                )
            a = fac.coeff((0, 1))
            b = fac.coeff((0, 0))
            roots.append(-b * field.inv(a))
    return roots, clusters, has_vertical


# ----------------------------------------------------------------------
# blow-up of a single point


def _strict_chart1(f, m):
    """Chart (u, v) -> (u, u*v); divide by u^m."""
    g = f.substitute({"v": Poly.var("u", GERM_VARS, f.field) * Poly.var("v", GERM_VARS, f.field)})
    return g.div_monomial((m, 0))

def _strict_chart2(f, m):
    """Chart (u, v) -> (u*v, v); divide by v^m."""
    g = f.substitute({"u": Poly.var("u", GERM_VARS, f.field) * Poly.var("v", GERM_VARS, f.field)})
    return g.div_monomial((0, m))


def _translate_v(f, t):
    v = Poly.var("v", GERM_VARS, f.field)
    return f.substitute({"v": v + Poly.const(t, GERM_VARS, f.field)})


def blow_up(germ):
    """Strict-transform germs at the points over the origin.

    Returns a list of (CurveGerm, conjugacy_degree); conjugate points over an
    irreducible direction polynomial are represented by one germ over the
    corresponding extension field.
    """
    f = germ.equation
    m = f.min_degree()
    if m < 1:
        raise GermError("nothing to blow up")
    roots, clusters, has_vertical = _direction_data(f)
    out = []
    g1 = _strict_chart1(f, m)
    for t in roots:
        out.append((CurveGerm(_translate_v(g1, t), label=germ.label), 1))
    for minpoly in clusters:
        K = NumberField(minpoly, check_irreducible=False)
        lifted = g1.lift(K)
        out.append((CurveGerm(_translate_v(lifted, K.gen()), label=germ.label), K.degree))
    if has_vertical:
        g2 = _strict_chart2(f, m)
        out.append((CurveGerm(g2, label=germ.label), 1))
    return out


# ----------------------------------------------------------------------
# resolution trees


@dataclass
class ResolutionNode:
    id: int
    parent: int  # -1 for the root
    mult: int
    conj: int
    depth: int
    blown: bool = False
    stop: bool = False
    root_a1: bool = False
    prox_offsets: tuple = ()
    children: list = dfield(default_factory=list)


class ResolutionTree:
    def __init__(self, germ):
        self.germ = germ
        self.nodes = []

    def add(self, parent, mult, conj, depth, prox_offsets=()):
        n = ResolutionNode(len(self.nodes), parent, mult, conj, depth, prox_offsets=tuple(sorted(prox_offsets)))
        self.nodes.append(n)
        if parent >= 0:
            self.nodes[parent].children.append(n.id)
        return n

    def delta(self):
        return sum(n.conj * n.mult * (n.mult - 1) // 2 for n in self.nodes)

    def branches(self):
        r = 0
        for n in self.nodes:
            if n.stop:
                r += n.conj * (2 if n.root_a1 else 1)
        return r

    def multiplicity_sequence(self):
        """Multiplicities along blown-up points (root first, depth order)."""
        return [(n.mult, n.conj) for n in self.nodes if n.blown]

    def to_json_obj(self):
        return {
            "nodes": [
                {
                    "id": n.id,
                    "parent": n.parent,
                    "multiplicity": n.mult,
                    "conjugacyDegree": n.conj,
                    "stop": n.stop,
                }
                for n in self.nodes
            ]
        }

    def top_type(self):
        return TopType(_encode(self, 0, 1))


class TopType:
    """Canonical encoding of the embedded topological type.

    Conjugate points are expanded so that the encoding only depends on the
    geometry over the closure; two germs have equal encodings iff their
    resolution trees (with proximity structure) are isomorphic.
    """

    def __init__(self, key):
        self.key = key

    def __eq__(self, other):
        return isinstance(other, TopType) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "TopType(%s)" % (self.key,)


def _encode(tree, node_id, parent_conj):
    n = tree.nodes[node_id]
    rel = n.conj // parent_conj
    kids = []
    for c in n.children:
        enc, crel = _encode_child(tree, c, n.conj)
        kids.extend([enc] * crel)
    kids.sort()
    body = "(%d;%s;%s)" % (n.mult, ",".join(str(o) for o in n.prox_offsets), "".join(kids))
    if node_id == 0 and n.root_a1:
        body = "(A1)" + body
    return body


def _encode_child(tree, node_id, parent_conj):
    n = tree.nodes[node_id]
    rel = n.conj // parent_conj
    assert rel * parent_conj == n.conj
    kids = []
    for c in n.children:
        enc, crel = _encode_child(tree, c, n.conj)
        kids.extend([enc] * crel)
    kids.sort()
    body = "(%d;%s;%s)" % (n.mult, ",".join(str(o) for o in n.prox_offsets), "".join(kids))
    return body, rel


class _RPoint:
    __slots__ = ("eq", "excs", "conj", "depth", "node_id")

    def __init__(self, eq, excs, conj, depth, node_id):
        self.eq = eq
        self.excs = excs  # list of (origin_node_id, smooth local equation)
        self.conj = conj
        self.depth = depth
        self.node_id = node_id


def _linear_coeffs(p):
    return p.coeff((1, 0)), p.coeff((0, 1))


def _transverse(a, b):
    (a1, a2), (b1, b2) = _linear_coeffs(a), _linear_coeffs(b)
    return (a1 * b2 - a2 * b1) != 0


def _is_node_form(f):
    coeffs, m = _tangent_cone_coeffs(f)
    return m == 2 and _binary_discriminant_nonzero(coeffs)


def resolve(germ):
    """Minimal resolution tree of the germ (blowing up only non-nodes of the
    reduced total transform)."""
    tree = ResolutionTree(germ)
    f = germ.equation
    m = f.min_degree()
    root = tree.add(-1, m, 1, 0)
    if m == 1 or _is_node_form(f):
        root.stop = True
        root.root_a1 = m == 2
        return tree
    queue = [_RPoint(f, [], 1, 0, root.id)]
    budget = None
    while queue:
        pt = queue.pop()
        node = tree.nodes[pt.node_id]
        node.blown = True
        if budget is None and len(tree.nodes) > 4 * max(tree.delta(), 1) + 16:
            mu = colength([f.derivative("u"), f.derivative("v")])
            if mu == math.inf:
                raise GermError("non-isolated singularity in resolution")
            budget = 4 * ((mu + m) // 2) + 16
        if budget is not None and len(tree.nodes) > budget:
            raise GermError("resolution exceeded its node budget; germ %r" % germ.label)
        eq = pt.eq
        mp = eq.min_degree()
        field = eq.field
        try:
            roots, clusters, has_vertical = _direction_data(eq)
        except TowerError as e:
            raise TowerError("%s (while resolving germ %r)" % (e, germ.label))
        g1 = _strict_chart1(eq, mp)
        uvar = Poly.var("u", GERM_VARS, field)
        children = []
        for t in roots:
            geq = _translate_v(g1, t)
            excs = [(pt.node_id, uvar)]
            for origin, h in pt.excs:
                hs = _strict_chart1(h, 1)
                hs_t = _translate_v(hs, t)
                if hs_t.constant_value() == 0:
                    excs.append((origin, hs_t))
            children.append((geq, excs, pt.conj, field))
        for minpoly in clusters:
            if field != QQ:
                raise TowerError(
                    "conjugate cluster over an extension field (germ %r)" % germ.label
                )
            K = NumberField(minpoly, check_irreducible=False)
            geq = _translate_v(g1.lift(K), K.gen())
            excs = [(pt.node_id, uvar.lift(K))]
            children.append((geq, excs, pt.conj * K.degree, K))
        if has_vertical:
            g2 = _strict_chart2(eq, mp)
            vvar = Poly.var("v", GERM_VARS, field)
            excs = [(pt.node_id, vvar)]
            for origin, h in pt.excs:
                hs = _strict_chart2(h, 1)
                if hs.constant_value() == 0:
                    excs.append((origin, hs))
            children.append((g2, excs, pt.conj, field))
        for geq, excs, conj, cfield in children:
            if len(excs) > 2:
                raise GermError("more than two exceptional components through a point")
            cm = geq.min_degree()
            prox = tuple(
                tree.nodes[pt.node_id].depth + 1 - tree.nodes[origin].depth
                for origin, _h in excs
                if origin != pt.node_id
            )
            child = tree.add(pt.node_id, cm, conj, pt.depth + 1, prox)
            if cm == 1 and len(excs) == 1 and _transverse(geq, excs[0][1]):
                child.stop = True
            else:
                queue.append(_RPoint(geq, excs, conj, pt.depth + 1, child.id))
    return tree


def delta_branches(tree):
    """(delta invariant, number of branches) from a completed tree."""
    return tree.delta(), tree.branches()


def top_type(tree):
    return tree.top_type()


def intersection_multiplicity(g1, g2):
    """Local intersection number at the origin, math.inf on a common factor."""
    f1, f2 = g1.equation, g2.equation
    if f1.field != f2.field:
        if f1.field == QQ:
            f1 = f1.lift(f2.field)
        elif f2.field == QQ:
            f2 = f2.lift(f1.field)
        else:
            raise GermError("germs over incompatible fields")
    if not gcd_poly(f1, f2).is_constant():
        return math.inf
    return colength([f1, f2], NEGDEGREVLEX)
