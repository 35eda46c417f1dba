"""Local invariants of a curve germ: mu, tau, class recognition, tau^es.

The classifier recognizes the singularity classes that admit closed-form
equisingular data: ADE germs, ordinary multiple points (all branches smooth
with distinct tangents), two-term binomial germs c1*u^p + c2*v^q, and
literally weighted-homogeneous equations.  Everything else is tagged General;
for those germs tau^es is reported as unknown rather than approximated, and
the downstream criteria degrade to 'not decided' instead of ever
over-certifying.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ
from .germ import CurveGerm, delta_branches, resolve, top_type
from .localstd import LocalOrdering, colength
from .poly import Poly
from .textio import parse_poly


class InvariantError(ValueError):
    pass


def jacobian_generators(g):
    f = g.equation
    return [f.derivative("u"), f.derivative("v")]


def tjurina_generators(g):
    f = g.equation
    return [f, f.derivative("u"), f.derivative("v")]


def mu(g):
    """Milnor number: colength of the ideal of the two partials."""

    def compute():
        m = colength(jacobian_generators(g))
        if m == math.inf:
            raise InvariantError("non-isolated singularity (mu is infinite)")
        return m

    return g.cached("mu", compute)


def tau(g):
    """Tjurina number: colength of (f, f_u, f_v)."""
    return g.cached("tau", lambda: colength(tjurina_generators(g)))


def delta_r(g):
    return g.cached("delta_r", lambda: delta_branches(resolve(g)))


@dataclass(frozen=True)
class ClassTag:
    kind: str  # 'ADE' | 'OrdinaryMultiple' | 'BrieskornPQ' | 'QuasihomogeneousW' | 'General'
    ade: tuple = ()  # ('A', k) etc.
    r: int = 0  # ordinary multiplicity
    p: int = 0
    q: int = 0
    weights: tuple = ()  # (w1, w2, d) when a literal weighted-homogeneous form exists
    ordinary: bool = False
    quasihomogeneous: bool = False

    def describe(self):
        if self.kind == "ADE":
            return "%s%d" % self.ade
        if self.kind == "OrdinaryMultiple":
            return "ordinary %d-fold point" % self.r
        if self.kind == "BrieskornPQ":
            return "binomial u^%d - v^%d type" % (self.p, self.q)
        if self.kind == "QuasihomogeneousW":
            return "weighted homogeneous, weights (%d,%d), degree %d" % self.weights
        return "general" + (" (tau = mu)" if self.quasihomogeneous else "")


def _literal_weights(f):
    """(w1, w2, d) if all support lies on one line with positive weights."""
    pts = list(f.terms)
    if len(pts) == 1:
        (a, b) = pts[0]
        if a and b:
            return (1, 1, a + b)
        return None
    (a1, b1) = pts[0]
    w1 = w2 = None
    for (a2, b2) in pts[1:]:
        if (a1, b1) != (a2, b2) and (a1 - a2, b1 - b2) != (0, 0):
            da, db = a1 - a2, b1 - b2
            if da == 0 or db == 0:
                return None
            w1, w2 = abs(db), abs(da)
            if Fraction(da, db) > 0:
                return None
            g = math.gcd(w1, w2)
            w1, w2 = w1 // g, w2 // g
            break
    if w1 is None:
        return None
    d = w1 * a1 + w2 * b1
    for (a, b) in pts:
        if w1 * a + w2 * b != d:
            return None
    return (w1, w2, d)


def _is_binomial(f):
    """c1*u^p + c2*v^q with p, q >= 2 (the axes exchanged if needed)."""
    if len(f.terms) != 2:
        return None
    exps = sorted(f.terms)
    (a1, b1), (a2, b2) = exps
    if a1 == 0 and b2 == 0 and b1 >= 2 and a2 >= 2:
        return (min(a2, b1), max(a2, b1))
    return None


def _tangent_cone_squarefree_full(g):
    """True if the degree-m form has m distinct roots (ordinary point)."""
    from .poly import is_squarefree

    f = g.equation
    fm = f.lowest_part()
    m = f.min_degree()
    # squarefree as a binary form, including the point at infinity of P^1:
    # m distinct projective roots iff fm is squarefree and not divisible by
    # the square of either variable
    if not is_squarefree(fm):
        return False
    return True


_D_REFERENCE = {}
_E_REFERENCE = {}


def _reference_top_type(kind, k):
    cache = _D_REFERENCE if kind == "D" else _E_REFERENCE
    if k not in cache:
        if kind == "D":
            f = parse_poly("v*(u^2 - v^%d)" % (k - 2), ("u", "v"))
        elif k == 6:
            f = parse_poly("u^3 - v^4", ("u", "v"))
        elif k == 7:
            f = parse_poly("u*(u^2 - v^3)", ("u", "v"))
        else:
            f = parse_poly("u^3 - v^5", ("u", "v"))
        cache[k] = top_type(resolve(CurveGerm(f)))
    return cache[k]


def classify(g):
    """Most specific recognized class tag for a singular germ."""

    def compute():
        m = g.multiplicity()
        if m < 2:
            raise InvariantError("classify expects a singular germ")
        muv = mu(g)
        tv = tau(g)
        qh = muv == tv
        weights = _literal_weights(g.equation)
        if m == 2:
            assert qh, "multiplicity-2 germs satisfy tau = mu"
            return ClassTag("ADE", ade=("A", muv), weights=weights or (),
                            ordinary=(muv == 1), quasihomogeneous=True)
        pq = _is_binomial(g.equation)
        if pq:
            p, q = pq
            if (p, q) in ((3, 4), (3, 5)):  # E6 and E8 in binomial form
                return ClassTag("ADE", ade=("E", muv), weights=weights or (), quasihomogeneous=True)
            return ClassTag(
                "BrieskornPQ", p=p, q=q,
                weights=(q // math.gcd(p, q), p // math.gcd(p, q), p * q // math.gcd(p, q)),
                ordinary=(p == q), quasihomogeneous=True,
            )
        if _tangent_cone_squarefree_full(g):
            return ClassTag("OrdinaryMultiple", r=m, weights=weights or (),
                            ordinary=True, quasihomogeneous=qh)
        if m == 3:
            tt = top_type(resolve(g))
            if muv >= 4 and tt == _reference_top_type("D", muv):
                return ClassTag("ADE", ade=("D", muv), weights=weights or (), quasihomogeneous=True)
            if muv in (6, 7, 8) and tt == _reference_top_type("E", muv):
                return ClassTag("ADE", ade=("E", muv), weights=weights or (), quasihomogeneous=True)
        if weights and qh:
            return ClassTag("QuasihomogeneousW", weights=weights, quasihomogeneous=True)
        return ClassTag("General", quasihomogeneous=qh)

    return g.cached("class", compute)


def _monomials_of_weighted_degree_at_least(w1, w2, d, field):
    """Minimal monomial generators of the ideal of w-degree >= d monomials."""
    out = []
    amax = (d + w1 - 1) // w1
    for a in range(amax + 1):
        rem = d - w1 * a
        b = 0 if rem <= 0 else (rem + w2 - 1) // w2
        out.append((a, b))
    gens = []
    for (a, b) in out:
        if not any(x <= a and y <= b and (x, y) != (a, b) for x, y in out):
            gens.append((a, b))
    return [Poly(("u", "v"), {e: field.one()}, field) for e in sorted(set(gens))]


def equisingularity_ideal_generators(g):
    """Generators of the ideal of topological-type-preserving first-order
    deformations, where a closed description exists; None for General germs.

    For a weighted-homogeneous equation this is (f, f_u, f_v) plus all
    monomials of weighted degree >= d; for an ordinary r-fold point it is
    (f, f_u, f_v) plus all monomials of degree >= r; for ADE germs the
    Tjurina ideal itself.
    """
    tag = classify(g)
    f = g.equation
    base = tjurina_generators(g)
    if tag.kind == "ADE":
        return base
    if tag.kind in ("BrieskornPQ", "QuasihomogeneousW") and tag.weights:
        w1, w2, d = tag.weights
        return base + _monomials_of_weighted_degree_at_least(w1, w2, d, f.field)
    if tag.kind == "OrdinaryMultiple":
        return base + _monomials_of_weighted_degree_at_least(1, 1, tag.r, f.field)
    return None


def tau_es(g):
    """Codimension of the topological-type stratum; None when unknown.

    Closed forms: ADE -> tau; ordinary r-fold -> r(r+1)/2 - 2; binomial
    u^p - v^q -> ((p+1)(q+1) - gcd(p,q) - 5)/2 - floor(q/p) + eps with
    eps = 1 iff p | q.  Literal weighted-homogeneous germs are computed
    exactly as the colength of the deformation ideal."""

    def compute():
        tag = classify(g)
        if tag.kind == "ADE":
            return tau(g)
        if tag.kind == "OrdinaryMultiple":
            return tag.r * (tag.r + 1) // 2 - 2
        if tag.kind == "BrieskornPQ":
            p, q = tag.p, tag.q
            eps = 1 if q % p == 0 else 0
            val = Fraction((p + 1) * (q + 1) - math.gcd(p, q) - 5, 2) - (q // p) + eps
            assert val.denominator == 1
            return int(val)
        if tag.kind == "QuasihomogeneousW":
            return tau_es_via_ideal(g)
        return None

    return g.cached("tau_es", compute)


def tau_es_via_ideal(g, weighted_order=True):
    """Colength of the explicit deformation ideal (weighted standard basis)."""
    gens = equisingularity_ideal_generators(g)
    if gens is None:
        raise InvariantError("no closed description of the deformation ideal")
    tag = classify(g)
    if weighted_order and tag.weights:
        order = LocalOrdering("weighted", (tag.weights[0], tag.weights[1]))
    else:
        order = LocalOrdering()
    val = colength(gens, order)
    assert val != math.inf
    return val


def modality(g):
    """mu - tau^es; None when tau^es is unknown.

    Derived from the stratum codimension only; no independent normal-form
    classification is attempted."""
    te = tau_es(g)
    if te is None:
        return None
    return mu(g) - te


def tau_es_tensor_component(g, comp_eq):
    """Contribution of one component through the point to the global
    topological criterion: colength of (deformation ideal + component
    equation).  None when the deformation ideal is unknown."""
    gens = equisingularity_ideal_generators(g)
    if gens is None:
        return None
    if comp_eq.field != g.field:
        if comp_eq.field == QQ:
            comp_eq = comp_eq.lift(g.field)
        else:
            gens = [p.lift(comp_eq.field) for p in gens]
    val = colength(gens + [comp_eq])
    assert val != math.inf
    return int(val)


@dataclass
class SingularityRecord:
    """Full invariant bundle of one singular point."""

    germ: CurveGerm
    m: int
    mu: int
    tau: int
    delta: int
    branches: int
    tau_es: object  # int or None
    modality: object  # int or None
    class_tag: ClassTag

    @staticmethod
    def analyze(germ):
        m = germ.multiplicity()
        muv = mu(germ)
        tv = tau(germ)
        d, r = delta_r(germ)
        tag = classify(germ)
        te = tau_es(germ)
        if tv > muv:
            raise InvariantError("tau exceeded mu")
        if te is not None and te > tv:
            raise InvariantError("tau_es exceeded tau")
        if 2 * d - r + 1 != muv:
            raise InvariantError("delta/branch count inconsistent with mu")
        return SingularityRecord(
            germ=germ, m=m, mu=muv, tau=tv, delta=d, branches=r,
            tau_es=te, modality=None if te is None else muv - te, class_tag=tag,
        )

    def to_json_obj(self):
        return {
            "multiplicity": self.m,
            "mu": self.mu,
            "tau": self.tau,
            "tauEs": self.tau_es,
            "delta": self.delta,
            "branches": self.branches,
            "modality": self.modality,
            "class": self.class_tag.describe(),
            "quasihomogeneous": self.class_tag.quasihomogeneous,
        }
