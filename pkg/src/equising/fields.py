"""Exact coefficient fields: the rationals and simple extensions Q[t]/(m).

Every scalar in the engine is either a rational number (``fractions.Fraction``
or ``gmpy2.mpq``) or an :class:`NFElement` living in a fixed
:class:`NumberField`.  All arithmetic is exact; there is no floating point
anywhere in this package.
"""
from __future__ import annotations

from fractions import Fraction

try:  # gmpy2 gives a large speedup for rational arithmetic; Fraction works too
    from gmpy2 import mpq as _RAT
except ImportError:  # pragma: no cover
    _RAT = Fraction


def rational(a=0, b=1):
    """Exact rational from ints, strings like '3/4', Fractions or mpq."""
    return _RAT(a, b) if b != 1 else _RAT(a)


RAT_ZERO = rational(0)
RAT_ONE = rational(1)


def is_rational_scalar(x) -> bool:
    return not isinstance(x, NFElement)


class FieldError(ValueError):
    pass


class RationalField:
    """The field Q.  Scalars are plain rationals."""

    degree = 1
    is_extension = False

    def coerce(self, x):
        if isinstance(x, NFElement):
            r = x.as_rational()
            if r is None:
                raise FieldError("cannot coerce a proper extension element into Q")
            return r
        return rational(x)

    def zero(self):
        return RAT_ZERO

    def one(self):
        return RAT_ONE

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return RAT_ONE / x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    """Division with remainder in Q[t], coefficient lists low->high."""
    a = list(a)
    q = [RAT_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = RAT_ONE / b[-1]
    while len(a) >= len(b) and _poly_trim(a):
        shift = len(a) - len(b)
        f = a[-1] * inv_lead
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        _poly_trim(a)
    return _poly_trim(q), a


class NumberField:
    """A simple extension Q[t]/(m(t)) with m monic irreducible over Q.

    Elements are coordinate vectors in the power basis 1, t, ..., t^(deg-1).
    The generator prints as '@'.  Irreducibility of the modulus is checked at
    construction (via rational factorization).
    """

    is_extension = True

    def __init__(self, modulus, check_irreducible=True):
        mod = [rational(c) for c in modulus]
        _poly_trim(mod)
        if len(mod) < 3:
            raise FieldError("extension modulus must have degree >= 2")
        if mod[-1] != 1:
            lead = mod[-1]
            mod = [c / lead for c in mod]
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        if check_irreducible and not _is_irreducible_modulus(self.modulus):
            raise FieldError("extension modulus is reducible over Q")
        # reduction table: t^(deg+k) expressed in the power basis
        red = []
        cur = [-c for c in mod[:-1]]  # t^deg
        red.append(tuple(cur))
        for _ in range(self.degree - 2):
            cur = [RAT_ZERO] + cur
            if len(cur) > self.degree:
                top = cur.pop()
                cur = [c + top * r for c, r in zip(cur, red[0])]
            red.append(tuple(cur))
        self._red = red

    def elem(self, coords):
        c = [rational(x) for x in coords]
        if len(c) > self.degree:
            raise FieldError("coordinate vector too long")
        c += [RAT_ZERO] * (self.degree - len(c))
        return NFElement(self, tuple(c))

    def gen(self):
        return self.elem([0, 1])

    def zero(self):
        return self.elem([])

    def one(self):
        return self.elem([1])

    def coerce(self, x):
        if isinstance(x, NFElement):
            if x.field != self:
                raise FieldError("element of a different extension field")
            return x
        return self.elem([rational(x)])

    def inv(self, x):
        return self.coerce(x).inverse()

    def _mul_coords(self, a, b):
        n = self.degree
        prod = [RAT_ZERO] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    prod[i + j] += ai * bj
        out = list(prod[:n])
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c != 0:
                row = self._red[k - n]
                for i, r in enumerate(row):
                    if r != 0:
                        out[i] += c * r
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NF", self.modulus))

    def __repr__(self):
        return "QQ[@]/(%s)" % (self.modulus,)


class NFElement:
    """Element of a :class:`NumberField`; immutable and hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def as_rational(self):
        """The underlying rational if all higher coordinates vanish, else None."""
        if any(c != 0 for c in self.coords[1:]):
            return None
        return self.coords[0]

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldError("mixed extension fields")
            return other
        return self.field.elem([rational(other)])

    def __add__(self, other):
        o = self._lift(other)
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        return NFElement(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in extension field")
        # extended Euclid in Q[t] against the modulus
        a = list(self.field.modulus)
        b = _poly_trim(list(self.coords))
        s_prev, s_cur = [], [RAT_ONE]
        while True:
            q, r = _poly_divmod(a, b)
            if not r:
                break
            s_next = list(s_prev)
            s_next += [RAT_ZERO] * (len(q) + len(s_cur) - 1 - len(s_next))
            for i, qi in enumerate(q):
                if qi == 0:
                    continue
                for j, sj in enumerate(s_cur):
                    s_next[i + j] -= qi * sj
            _poly_trim(s_next)
            a, b = b, r
            s_prev, s_cur = s_cur, s_next
        if len(b) != 1:
            raise FieldError("modulus is not irreducible (gcd has positive degree)")
        c = RAT_ONE / b[0]
        return self.field.elem([x * c for x in s_cur])

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.field == other.field and self.coords == other.coords
        if any(c != 0 for c in self.coords[1:]):
            return False
        return self.coords[0] == other

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.field.modulus, self.coords))

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def __repr__(self):
        from .textio import format_scalar

        return format_scalar(self)


def field_of(scalar):
    return scalar.field if isinstance(scalar, NFElement) else QQ


def lift_scalar(x, field):
    """Coerce a scalar into the given field (Q embeds into any extension)."""
    return field.coerce(x)


def _is_irreducible_modulus(mod) -> bool:
    import sympy

    t = sympy.Symbol("t")
    expr = sum(
        sympy.Rational(int(c.numerator), int(c.denominator)) * t**i for i, c in enumerate(mod)
    )
    fl = sympy.factor_list(sympy.Poly(expr, t, domain="QQ"))[1]
    return len(fl) == 1 and fl[0][1] == 1
