"""Exact multivariate polynomials over Q or a simple extension Q(@).

The representation is a map from dense exponent tuples to nonzero scalars,
together with an ordered variable list and the coefficient field.  Everything
downstream (local standard bases, blow-ups, resultant elimination, the
criterion evaluators) runs on this one type.

Elimination is done with a subresultant pseudo-remainder sequence; gcds use
the same PRS machinery so they work over extension fields, where no
factorization is available.  Factorization over Q itself is delegated to
sympy (Zassenhaus/EEZ) behind :func:`factor_rational`.
"""
from __future__ import annotations

from fractions import Fraction

from .fields import QQ, is_rational_scalar, rational


class PolyError(ValueError):
    pass


class Poly:
    """Polynomial in an ordered list of variables over an exact field.

    Invariants: no zero coefficients are stored and every exponent tuple has
    length ``len(self.vars)``.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "field")

    def __init__(self, vars, terms, field=QQ):
        self.vars = tuple(vars)
        self.field = field
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # ------------------------------------------------------------------
    # constructors
    @staticmethod
    def zero(vars, field=QQ):
        return Poly(vars, {}, field)

    @staticmethod
    def const(c, vars, field=QQ):
        c = field.coerce(c)
        z = (0,) * len(vars)
        return Poly(vars, {z: c} if c != 0 else {}, field)

    @staticmethod
    def var(name, vars, field=QQ):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return Poly(vars, {tuple(e): field.one()}, field)

    @staticmethod
    def from_terms(pairs, vars, field=QQ):
        terms = {}
        for e, c in pairs:
            c = field.coerce(c)
            e = tuple(e)
            terms[e] = terms.get(e, field.zero()) + c
        return Poly(vars, terms, field)

    # ------------------------------------------------------------------
    # basic queries
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero())

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        """Order of vanishing at the origin (multiplicity)."""
        if not self.terms:
            raise PolyError("order of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def lowest_part(self):
        """Sum of the terms of minimal total degree (the tangent cone form)."""
        m = self.min_degree()
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == m}, self.field)

    def homogeneous_part(self, d):
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d}, self.field)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.field.zero())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.vars == other.vars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, self.field, frozenset(self.terms.items())))

    def __repr__(self):
        from .textio import format_poly

        return format_poly(self)

    # ------------------------------------------------------------------
    # ring operations
    def _check(self, other):
        if self.vars != other.vars or self.field != other.field:
            raise PolyError("operands live in different polynomial rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars, self.field)
        self._check(other)
        terms = dict(self.terms)
        zero = self.field.zero()
        for e, c in other.terms.items():
            v = terms.get(e, zero) + c
            if v == 0:
                terms.pop(e, None)
            else:
                terms[e] = v
        return Poly(self.vars, terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        terms = {}
        zero = self.field.zero()
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = terms.get(e, zero) + c1 * c2
                if v == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = v
        return Poly(self.vars, terms, self.field)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.field.coerce(c)
        if c == 0:
            return Poly.zero(self.vars, self.field)
        return Poly(self.vars, {e: v * c for e, v in self.terms.items()}, self.field)

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative exponent")
        out = Poly.const(1, self.vars, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mul_monomial(self, exp, c=None):
        c = self.field.one() if c is None else self.field.coerce(c)
        return Poly(
            self.vars,
            {tuple(x + y for x, y in zip(e, exp)): v * c for e, v in self.terms.items()},
            self.field,
        )

    def div_monomial(self, exp):
        terms = {}
        for e, v in self.terms.items():
            ne = tuple(x - y for x, y in zip(e, exp))
            if any(x < 0 for x in ne):
                raise PolyError("not divisible by the monomial")
            terms[ne] = v
        return Poly(self.vars, terms, self.field)

    # ------------------------------------------------------------------
    # calculus / evaluation
    def derivative(self, name):
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return Poly(self.vars, terms, self.field)

    def substitute(self, assignments):
        """Exact composition; unassigned variables map to themselves.

        Values may be Poly (sharing one variable list) or scalars."""
        target_vars = None
        subs = {}
        for name, val in assignments.items():
            if isinstance(val, Poly):
                if target_vars is None:
                    target_vars = val.vars
                elif val.vars != target_vars:
                    raise PolyError("assignment polynomials disagree on variables")
            subs[name] = val
        if target_vars is None:
            target_vars = self.vars
        field = self.field
        images = []
        for name in self.vars:
            if name in subs:
                val = subs[name]
                if not isinstance(val, Poly):
                    val = Poly.const(val, target_vars, field)
                images.append(val)
            else:
                if name not in target_vars:
                    raise PolyError("variable %r missing from the target ring" % name)
                images.append(Poly.var(name, target_vars, field))
        out = Poly.zero(target_vars, field)
        pow_cache = [{0: Poly.const(1, target_vars, field)} for _ in images]
        for e, c in self.terms.items():
            term = Poly.const(c, target_vars, field)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                cache = pow_cache[i]
                if k not in cache:
                    cache[k] = images[i] ** k
                term = term * cache[k]
            out = out + term
        return out

    def eval_scalars(self, point):
        """Evaluate at a tuple of scalars, one per variable."""
        field = self.field
        pt = [field.coerce(x) for x in point]
        total = field.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def rename(self, new_vars):
        if len(new_vars) != len(self.vars):
            raise PolyError("variable count mismatch")
        return Poly(new_vars, dict(self.terms), self.field)

    def lift(self, field):
        """Re-coerce all coefficients into ``field`` (Q embeds into Q(@))."""
        return Poly(self.vars, {e: field.coerce(c) for e, c in self.terms.items()}, field)

    # ------------------------------------------------------------------
    # univariate views
    def as_univariate(self, name):
        """Coefficient list (low to high) in ``name``, entries in the other vars."""
        i = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        d = self.degree_in(name)
        coeffs = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            re = tuple(x for j, x in enumerate(e) if j != i)
            coeffs[e[i]][re] = c
        return [Poly(rest, t, self.field) for t in coeffs]

    @staticmethod
    def from_univariate(coeffs, name, vars, field=QQ):
        vars = tuple(vars)
        i = vars.index(name)
        terms = {}
        for k, c in enumerate(coeffs):
            if isinstance(c, Poly):
                for e, v in c.terms.items():
                    ne = list(e[:i]) + [k] + list(e[i:])
                    terms[tuple(ne)] = v
            else:
                c = field.coerce(c)
                if c != 0:
                    e = [0] * len(vars)
                    e[i] = k
                    terms[tuple(e)] = c
        return Poly(vars, terms, field)


# ----------------------------------------------------------------------
# division, gcd, resultants (subresultant PRS, field-generic)


def divmod_poly(f, g, order_key=None):
    """Multivariate division of f by a single divisor g; returns (q, r).

    Leading terms are taken w.r.t. a global degree order, which is all the
    exactness the PRS and strict-transform code needs."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if order_key is None:
        order_key = lambda e: (sum(e), e)
    field = f.field
    lead_g = max(g.terms, key=order_key)
    c_g = g.terms[lead_g]
    inv_cg = field.inv(c_g)
    q = Poly.zero(f.vars, field)
    r = f
    while not r.is_zero():
        cand = [e for e in r.terms if all(x >= y for x, y in zip(e, lead_g))]
        if not cand:
            break
        e = max(cand, key=order_key)
        shift = tuple(x - y for x, y in zip(e, lead_g))
        c = r.terms[e] * inv_cg
        mono = Poly(f.vars, {shift: c}, field)
        q = q + mono
        r = r - mono * g
    return q, r


def divexact(f, g):
    q, r = divmod_poly(f, g)
    if not r.is_zero():
        raise PolyError("inexact division")
    return q


def _uni_gcd_field(a, b):
    """Monic gcd of univariate polys (lists of scalars, low->high)."""

    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = 1 / b[-1] if is_rational_scalar(b[-1]) else b[-1].inverse()
        bm = [c * inv for c in b]
        r = list(a)
        while len(r) >= len(bm) and trim(r):
            shift = len(r) - len(bm)
            f = r[-1]
            for i, c in enumerate(bm):
                r[shift + i] -= f * c
            trim(r)
        a, b = bm, trim(r)
    if a:
        inv = 1 / a[-1] if is_rational_scalar(a[-1]) else a[-1].inverse()
        a = [c * inv for c in a]
    return a


def gcd_univariate(f, g, name):
    """Monic gcd of two polynomials univariate in ``name`` over the field."""
    fa = [c.constant_value() for c in f.as_univariate(name)] if f.terms else []
    ga = [c.constant_value() for c in g.as_univariate(name)] if g.terms else []
    h = _uni_gcd_field(fa, ga)
    return Poly.from_univariate(h, name, f.vars, f.field)


def content(f, name):
    """gcd of the coefficients of f viewed as univariate in ``name``."""
    coeffs = [c for c in f.as_univariate(name) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = gcd_poly(g, c)
        if g.is_constant():
            break
    return g


def primitive_part(f, name):
    c = content(f, name)
    return divexact(f, _embed(c, f.vars)), c


def _embed(g, vars):
    """Re-embed a polynomial in a subset of variables into ``vars``."""
    idx = [vars.index(v) for v in g.vars]
    terms = {}
    for e, c in g.terms.items():
        ne = [0] * len(vars)
        for j, k in zip(idx, e):
            ne[j] = k
        terms[tuple(ne)] = c
    return Poly(vars, terms, g.field)


def _pseudo_rem(A, B):
    """Standard pseudo-remainder lc(B)^(degA-degB+1) * A mod B.

    Coefficient entries are Poly values over the remaining variables."""
    R = list(A)
    dB = len(B) - 1
    lB = B[-1]
    steps = 0
    e = max(0, len(A) - len(B) + 1)
    while R and len(R) - 1 >= dB:
        lead = R[-1]
        R = [c * lB for c in R]
        shift = len(R) - 1 - dB
        for i, bc in enumerate(B):
            R[shift + i] = R[shift + i] - lead * bc
        while R and R[-1].is_zero():
            R.pop()
        steps += 1
    for _ in range(e - steps):
        R = [c * lB for c in R]
    return R


def _subresultant_prs(f, g, name):
    """Subresultant PRS of f, g in ``name``; returns the list of remainders
    (as coefficient lists over the remaining variables) plus bookkeeping for
    the resultant."""
    A = [c for c in f.as_univariate(name)]
    B = [c for c in g.as_univariate(name)]
    while A and A[-1].is_zero():
        A.pop()
    while B and B[-1].is_zero():
        B.pop()
    return A, B


def resultant(f, g, name):
    """Resultant of f and g with respect to ``name`` via subresultant PRS.

    Vanishes iff f and g share a factor involving ``name`` (over the closure,
    for nonzero inputs).  Sign convention follows the Sylvester determinant
    with f-rows first."""
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant of the zero polynomial")
    A, B = _subresultant_prs(f, g, name)
    rest = tuple(v for v in f.vars if v != name)
    one = Poly.const(1, rest, f.field)
    if not A or not B:
        raise PolyError("resultant of the zero polynomial")
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    sign = 1
    if dA < dB:
        A, B, dA, dB = B, A, dB, dA
        if dA * dB % 2:
            sign = -sign
    gg = one
    hh = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            sign = -sign
        R = _pseudo_rem(A, B)
        if not R:
            return Poly.zero(rest, f.field)
        denom = gg * hh**delta
        R = [divexact(c, denom) for c in R]
        A, B = B, R
        gg = A[-1]
        if delta == 0:
            pass  # hh unchanged when degrees match step to step
        elif delta == 1:
            hh = gg
        else:
            hh = divexact(gg**delta, hh ** (delta - 1))
        if len(B) - 1 == 0:
            dA = len(A) - 1
            if dA == 0:
                res = B[0]
            else:
                res = divexact(B[0] ** dA, hh ** (dA - 1))
            return res.scale(sign) if sign < 0 else res


def gcd_poly(f, g):
    """gcd over Q or Q(@), any number of variables, monic-normalized.

    Over Q with several live variables the computation is delegated to
    sympy's modular gcd; extension fields use a primitive PRS (inputs there
    are small germ-local polynomials)."""
    if f.is_zero():
        return _normalize_gcd(g)
    if g.is_zero():
        return _normalize_gcd(f)
    if f.is_constant() or g.is_constant():
        return Poly.const(1, f.vars, f.field)
    livef = {v for v in f.vars if f.degree_in(v) > 0}
    liveg = {v for v in g.vars if g.degree_in(v) > 0}
    common = [v for v in f.vars if v in livef and v in liveg]
    if not common:
        return Poly.const(1, f.vars, f.field)
    live_all = livef | liveg
    if len(live_all) == 1:
        return gcd_univariate(f, g, common[0])
    if f.field == QQ and len(live_all) > 1:
        return _normalize_gcd(_sympy_gcd(f, g))
    name = common[-1]
    cf = content(f, name)
    cg = content(g, name)
    fp = divexact(f, _embed(cf, f.vars))
    gp = divexact(g, _embed(cg, g.vars))
    A, B = fp.as_univariate(name), gp.as_univariate(name)
    while A and A[-1].is_zero():
        A.pop()
    while B and B[-1].is_zero():
        B.pop()
    if len(A) < len(B):
        A, B = B, A

    def _strip(coeffs):
        h = Poly.from_univariate(coeffs, name, f.vars, f.field)
        hc = content(h, name)
        if not hc.is_constant():
            h = divexact(h, _embed(hc, f.vars))
        return h

    gcd_main = Poly.const(1, f.vars, f.field)
    while True:
        if len(B) == 1:
            break  # coprime primitive parts
        R = _pseudo_rem(A, B)
        if not R:
            gcd_main = _strip(B)
            break
        A, B = B, _strip(R).as_univariate(name)
    cc = gcd_poly(cf, cg)
    return _normalize_gcd(gcd_main * _embed(cc, f.vars))


def _normalize_gcd(f):
    if f.is_zero():
        return f
    lead = max(f.terms, key=lambda e: (sum(e), e))
    return f.scale(f.field.inv(f.terms[lead]))


def strip_scalar_content(p):
    """Rescale by a nonzero rational so coefficients are primitive integers
    (over Q) or have primitive rational coordinates (extension fields).
    Returns (scaled polynomial, applied scalar factor)."""
    if p.is_zero():
        return p, None
    nums = []
    dens = 1
    if p.field == QQ:
        for c in p.terms.values():
            nums.append(int(c.numerator))
            d = int(c.denominator)
            dens = dens * d // _gcd_int(dens, d)
    else:
        for c in p.terms.values():
            for coord in c.coords:
                if coord != 0:
                    nums.append(int(coord.numerator))
                    d = int(coord.denominator)
                    dens = dens * d // _gcd_int(dens, d)
    g = 0
    for n in nums:
        g = _gcd_int(g, n)
        if g == 1:
            break
    g = g or 1
    s = rational(dens, g)
    if s == 1:
        return p, rational(1)
    return p.scale(s), s


def is_squarefree(f):
    """Squarefreeness over any char-0 field via gcd with the partials."""
    if f.is_zero():
        return False
    g = f
    for v in f.vars:
        if f.degree_in(v) > 0:
            g = gcd_poly(g, f.derivative(v))
            if g.is_constant():
                return True
    return g.is_constant()


def squarefree_factor(f):
    """Squarefree decomposition f = c * prod g_i^(e_i), pairwise coprime.

    Returns (c, [(g_i, e_i), ...]) with c a scalar.  Works over Q and Q(@)
    (Yun's algorithm plus content recursion)."""
    if f.is_zero():
        raise PolyError("squarefree decomposition of zero")
    if f.is_constant():
        return f.constant_value(), []
    name = next(v for v in reversed(f.vars) if f.degree_in(v) > 0)
    cont = content(f, name)
    pp = divexact(f, _embed(cont, f.vars))
    out = []
    if not cont.is_constant():
        _, sub = squarefree_factor(cont)
        out.extend([(_embed(g, f.vars), e) for g, e in sub])
    # Yun on the primitive part with respect to `name`
    df = pp.derivative(name)
    a = gcd_poly(pp, df)
    b = divexact(pp, a)
    c = divexact(df, a)
    d = c - b.derivative(name)
    i = 1
    while b.total_degree() > 0:
        g = gcd_poly(b, d)
        if g.total_degree() > 0:
            out.append((g, i))
        b2 = divexact(b, g)
        c2 = divexact(d, g)
        d = c2 - b2.derivative(name)
        b = b2
        i += 1
    prod = Poly.const(1, f.vars, f.field)
    for g, e in out:
        prod = prod * g**e
    leftover = divexact(f, prod)
    if not leftover.is_constant():
        raise PolyError("squarefree decomposition failed to account for a factor")
    return leftover.constant_value(), out


# ----------------------------------------------------------------------
# factorization and multivariate gcd over Q (sympy bridge)


def _sympy_gcd(f, g):
    import sympy

    sf, syms = _to_sympy(f)
    sg, _ = _to_sympy(g)
    return _from_sympy(sf.gcd(sg), f.vars, f.field)


def _to_sympy(f):
    import sympy

    syms = [sympy.Symbol(v) for v in f.vars]
    d = {}
    for e, c in f.terms.items():
        d[e] = sympy.Rational(int(c.numerator), int(c.denominator))
    return sympy.Poly.from_dict(d, *syms, domain="QQ"), syms


def _from_sympy(p, vars, field):
    terms = {}
    for e, c in p.as_dict().items():
        terms[tuple(int(x) for x in e)] = rational(str(c))
    return Poly(vars, terms, field)


def canonical_factor_form(f):
    """Scale to integer, content-1 coefficients with positive leading term."""
    if f.is_zero():
        return f
    out, _s = strip_scalar_content(f)
    lead = max(out.terms, key=lambda e: (sum(e), e))
    if out.terms[lead] < 0:
        out = -out
    return out


def _gcd_int(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def factor_rational(f):
    """Irreducible factors of a squarefree f over Q (not over the closure).

    Deterministic up to order: factors come back in canonical integer form,
    sorted by (total degree, text).  Extension-field input is rejected."""
    if f.field != QQ:
        raise PolyError("factorization over extension fields is unsupported")
    if f.is_zero():
        raise PolyError("factorization of zero")
    sp, syms = _to_sympy(f)
    import sympy

    _, fl = sympy.factor_list(sp)
    out = []
    for p, e in fl:
        if e != 1:
            raise PolyError("input was not squarefree")
        q = canonical_factor_form(_from_sympy(sympy.Poly(p, *syms, domain="QQ"), f.vars, f.field))
        out.append(q)
    from .textio import format_poly

    out.sort(key=lambda p: (p.total_degree(), format_poly(p)))
    return out


def factor_univariate_rational(f, name):
    """[(factor, multiplicity)] over Q for a univariate (in ``name``) poly."""
    if f.field != QQ:
        raise PolyError("factorization over extension fields is unsupported")
    sp, syms = _to_sympy(f)
    import sympy

    _, fl = sympy.factor_list(sp)
    out = []
    for p, e in fl:
        q = canonical_factor_form(_from_sympy(sympy.Poly(p, *syms, domain="QQ"), f.vars, f.field))
        out.append((q, int(e)))
    from .textio import format_poly

    out.sort(key=lambda pe: (pe[0].total_degree(), format_poly(pe[0])))
    return out
