"""Local monomial orderings, Mora normal form and standard bases.

This is the engine behind every colength computation in the package: Milnor
and Tjurina numbers, local intersection numbers and the dimensions entering
the smoothness criteria are all vector-space dimensions of local quotient
rings dim_C C{u,v}/I, computed here as the number of monomials outside the
leading ideal of a standard basis.

The orderings are anti-well-orderings (1 is the largest monomial).  Reduction
uses Mora's weak normal form with the ecart bound, allowing intermediate
results as further reducers; this terminates on polynomial input without any
series truncation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield

from .poly import Poly


class LocalOrderingError(ValueError):
    pass


@dataclass(frozen=True)
class LocalOrdering:
    """A local ordering on monomials in two variables.

    kind is one of 'negdegrevlex', 'negdeglex', 'weighted'; weighted orderings
    compare by negative weighted degree first and fall back to negdegrevlex.
    """

    kind: str = "negdegrevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("negdegrevlex", "negdeglex", "weighted"):
            raise LocalOrderingError("unknown ordering kind %r" % self.kind)
        if self.kind == "weighted":
            if len(self.weights) != 2 or any(w <= 0 for w in self.weights):
                raise LocalOrderingError("weighted ordering needs two positive weights")

    def degree(self, exp):
        if self.kind == "weighted":
            return self.weights[0] * exp[0] + self.weights[1] * exp[1]
        return sum(exp)

    def key(self, exp):
        """Sort key; larger key = larger monomial (1 is the largest)."""
        if self.kind == "negdegrevlex":
            return (-sum(exp), tuple(-e for e in reversed(exp)))
        if self.kind == "negdeglex":
            return (-sum(exp), exp)
        return (
            -(self.weights[0] * exp[0] + self.weights[1] * exp[1]),
            -sum(exp),
            tuple(-e for e in reversed(exp)),
        )


NEGDEGREVLEX = LocalOrdering("negdegrevlex")


def leading_exponent(p, ordering):
    return max(p.terms, key=ordering.key)


def _divides(a, b):
    return a[0] <= b[0] and a[1] <= b[1]


def _ecart(p, ordering, lead=None):
    lead = lead if lead is not None else leading_exponent(p, ordering)
    lead_deg = ordering.degree(lead)
    return max(ordering.degree(e) for e in p.terms) - lead_deg


def _truncate_below(p, cutoff_key, ordering):
    """Drop all terms strictly smaller than the highest corner.

    Sound whenever the cutoff is the smallest monomial outside a monomial
    ideal contained in the leading ideal of a zero-dimensional target ideal:
    such monomials lie in the ideal itself, so dropping them changes the
    polynomial by an ideal element only."""
    if cutoff_key is None:
        return p
    t = {e: c for e, c in p.terms.items() if ordering.key(e) >= cutoff_key}
    if len(t) == len(p.terms):
        return p
    return Poly(p.vars, t, p.field)


def mora_normal_form(f, reducers, ordering, with_unit=False, cutoff_key=None):
    """Mora's weak normal form of f against a list of polynomials.

    Intermediate partial results with smaller ecart are admitted as new
    reducers, which is what guarantees termination for local orderings.  The
    contract is u*f = (combination of reducers) + h modulo the ideal, for a
    local unit u; h is zero iff f lies in the ideal.  Coefficients are
    rescaled to primitive form after every step (absorbed into u), and with
    a highest-corner cutoff the tail is truncated below it.  With
    with_unit=True the pair (h, u) is returned."""
    from .poly import strip_scalar_content

    h = _truncate_below(f, cutoff_key, ordering)
    u = Poly.const(1, f.vars, f.field) if with_unit else None
    zero = Poly.zero(f.vars, f.field)
    pool = [(leading_exponent(g, ordering), g, None) for g in reducers if not g.is_zero()]
    while not h.is_zero():
        lh = leading_exponent(h, ordering)
        cands = [t for t in pool if _divides(t[0], lh)]
        if not cands:
            break
        eh = _ecart(h, ordering, lh)
        le, g, ug = min(cands, key=lambda t: _ecart(t[1], ordering, t[0]))
        if _ecart(g, ordering, le) > eh:
            pool.append((lh, h, u))
        c = h.terms[lh] * h.field.inv(g.terms[le])
        shift = (lh[0] - le[0], lh[1] - le[1])
        h = h - g.mul_monomial(shift, c)
        if with_unit:
            u = u - (ug if ug is not None else zero).mul_monomial(shift, c)
        h = _truncate_below(h, cutoff_key, ordering)
        h, s = strip_scalar_content(h)
        if with_unit and s is not None and s != 1:
            u = u.scale(s)
    return (h, u) if with_unit else h


def _spoly(f, lf, g, lg, ordering):
    lcm = (max(lf[0], lg[0]), max(lf[1], lg[1]))
    field = f.field
    a = f.mul_monomial((lcm[0] - lf[0], lcm[1] - lf[1]), field.inv(f.terms[lf]))
    b = g.mul_monomial((lcm[0] - lg[0], lcm[1] - lg[1]), field.inv(g.terms[lg]))
    return a - b


@dataclass
class StdBasis:
    """A standard basis with its ordering and minimal leading exponents."""

    generators: list
    ordering: LocalOrdering
    lead_exps: list = dfield(default_factory=list)

    def __post_init__(self):
        if not self.lead_exps:
            leads = [leading_exponent(g, self.ordering) for g in self.generators]
            self.lead_exps = _minimalize(leads)

    def reduce(self, f, with_unit=False):
        hc = highest_corner(self.lead_exps, self.ordering)
        cutoff = self.ordering.key(hc) if hc is not None else None
        return mora_normal_form(f, self.generators, self.ordering, with_unit, cutoff)

    def contains(self, f):
        return self.reduce(f).is_zero()

    def colength(self):
        return staircase_count(self.lead_exps)

    def monomial_basis(self):
        """Monomials outside the leading ideal, largest (local order) first."""
        c = self.colength()
        if c == math.inf:
            raise LocalOrderingError("quotient ring is infinite dimensional")
        out = _staircase_monomials(self.lead_exps)
        out.sort(key=self.ordering.key, reverse=True)
        assert len(out) == c
        return out


def _minimalize(leads):
    out = []
    for e in sorted(set(leads)):
        if not any(_divides(d, e) for d in out if d != e):
            out.append(e)
    return [e for e in out if not any(_divides(d, e) and d != e for d in out)]


def _staircase_monomials(lead_exps):
    """Monomials outside the monomial ideal; None if infinite."""
    if staircase_count(lead_exps) == math.inf:
        return None
    out = []
    amax = max(e[0] for e in lead_exps)
    for a in range(amax):
        bs = [e[1] for e in lead_exps if e[0] <= a]
        if not bs:
            continue
        out.extend((a, b) for b in range(min(bs)))
    return out


def highest_corner(lead_exps, ordering):
    """The smallest monomial outside the monomial ideal, or None when the
    staircase is infinite (no truncation is possible then)."""
    outside = _staircase_monomials(lead_exps)
    if outside is None:
        return None
    if not outside:
        return (0, 0)  # unit ideal: everything below 1 may be dropped
    return min(outside, key=ordering.key)


def staircase_count(lead_exps):
    """Number of monomials under the staircase; math.inf if unbounded."""
    if not lead_exps:
        return math.inf
    gens = sorted(set(lead_exps))
    mins = []
    for a, b in gens:
        if not any(x <= a and y <= b and (x, y) != (a, b) for x, y in gens):
            mins.append((a, b))
    if mins[0][0] != 0 or mins[-1][1] != 0:
        return math.inf
    total = 0
    for i in range(len(mins) - 1):
        total += (mins[i + 1][0] - mins[i][0]) * mins[i][1]
    return total


def std_basis(gens, ordering=NEGDEGREVLEX):
    """Standard basis of the ideal generated by ``gens`` for a local ordering.

    Classical Mora algorithm: Buchberger pair processing with the Mora weak
    normal form, with the product and chain criteria to discard pairs."""
    G = []
    for g in gens:
        if g is not None and not g.is_zero():
            if len(g.vars) != 2:
                raise LocalOrderingError("standard bases are implemented for 2 variables")
            le = leading_exponent(g, ordering)
            G.append(g.scale(g.field.inv(g.terms[le])))
    if not G:
        raise LocalOrderingError("zero ideal")
    leads = [leading_exponent(g, ordering) for g in G]
    hc = highest_corner(leads, ordering)
    cutoff = ordering.key(hc) if hc is not None else None
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    while pairs:
        i, j = min(
            pairs,
            key=lambda p: (
                ordering.degree(
                    (max(leads[p[0]][0], leads[p[1]][0]), max(leads[p[0]][1], leads[p[1]][1]))
                ),
                p,
            ),
        )
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        lcm = (max(li[0], lj[0]), max(li[1], lj[1]))
        # product criterion
        if li[0] + lj[0] == lcm[0] and li[1] + lj[1] == lcm[1]:
            continue
        # chain criterion
        skip = False
        for k, lk in enumerate(leads):
            if k in (i, j) or not _divides(lk, lcm):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pairs and p2 not in pairs:
                skip = True
                break
        if skip:
            continue
        h = mora_normal_form(_spoly(G[i], li, G[j], lj, ordering), G, ordering, False, cutoff)
        if h.is_zero():
            continue
        lh = leading_exponent(h, ordering)
        h = h.scale(h.field.inv(h.terms[lh]))
        G.append(h)
        leads.append(lh)
        hc = highest_corner(leads, ordering)
        cutoff = ordering.key(hc) if hc is not None else None
        n = len(G) - 1
        pairs.update((k, n) for k in range(n))
    return StdBasis(G, ordering)


def colength(gens_or_basis, ordering=NEGDEGREVLEX):
    """dim_C of the local quotient ring by the ideal; math.inf if infinite."""
    b = gens_or_basis if isinstance(gens_or_basis, StdBasis) else std_basis(gens_or_basis, ordering)
    return b.colength()


def quotient_monomial_basis(gens_or_basis, ordering=NEGDEGREVLEX):
    b = gens_or_basis if isinstance(gens_or_basis, StdBasis) else std_basis(gens_or_basis, ordering)
    return b.monomial_basis()


def reduce(f, basis):
    return basis.reduce(f)
