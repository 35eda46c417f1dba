"""Independent oracles used by the tests.

These deliberately avoid the code paths they check: colengths are recomputed
by dense exact linear algebra over truncated polynomial rings, and expected
values quoted in the tests were computed with these oracles and frozen.
"""
from __future__ import annotations

from equising.fields import QQ, rational
from equising.poly import Poly


def monomials_below(k):
    return [(a, b) for d in range(k) for a in range(d + 1) for b in (d - a,)]


def exact_rank(rows):
    """Rank of a matrix of exact scalars by fraction-free-ish elimination."""
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rows and col < ncols:
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[col] if not hasattr(pr[col], "inverse") else pr[col].inverse()
        pr[col:] = [x * inv for x in pr[col:]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i][col:] = [a - c * b for a, b in zip(rows[i][col:], pr[col:])]
        rank += 1
        col += 1
    return rank


def dense_colength(gens, k):
    """dim of the local quotient by (gens) for an ideal containing m^k:
    monomial count below degree k minus the rank of the multiplication map
    (generator, monomial shift) -> truncated polynomials of degree < k."""
    monos = monomials_below(k)
    index = {m: i for i, m in enumerate(monos)}
    field = gens[0].field
    zero = field.zero()
    rows = []
    for g in gens:
        gmin = g.min_degree() if not g.is_zero() else k
        for a, b in monos:
            if a + b + gmin >= k:
                continue
            prod = g.mul_monomial((a, b))
            row = [zero] * len(monos)
            for e, c in prod.terms.items():
                if sum(e) < k:
                    row[index[e]] = c
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - exact_rank(rows)


def random_poly(rng, vars, max_deg, field=QQ, min_order=0, density=0.6):
    terms = {}
    for a in range(max_deg + 1):
        for b in range(max_deg + 1 - a):
            if a + b < min_order:
                continue
            if rng.random() < density:
                c = rng.randint(-5, 5)
                if c:
                    terms[(a, b)] = rational(c)
    return Poly(vars, terms, field)
