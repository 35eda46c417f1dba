"""Polynomial text grammar and the canonical printer.

Grammar: variables from {x, y, z, u, v, t}, integer/rational literals,
operators ``+ - * ^ ( )``, the extension generator ``@``.  Implicit
multiplication is a parse error.  The printer emits the canonical form
(terms sorted degree-reverse-lexicographically, ties broken lexicographically)
and ``parse(print(p)) == p`` holds bit-exactly.
"""
from __future__ import annotations

from .fields import QQ, is_rational_scalar, rational
from .poly import Poly

ALLOWED_VARS = ("x", "y", "z", "u", "v", "t")


class ParseError(ValueError):
    def __init__(self, message, line=1, col=0):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


class _Lexer:
    def __init__(self, text, line=1):
        self.text = text
        self.pos = 0
        self.line = line
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        col = 1
        while i < len(text):
            ch = text[i]
            if ch in " \t":
                i += 1
                col += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                num = text[i:j]
                if j < len(text) and text[j] == "/":
                    k = j + 1
                    if k >= len(text) or not text[k].isdigit():
                        raise ParseError("malformed rational literal", self.line, col)
                    while k < len(text) and text[k].isdigit():
                        k += 1
                    self.tokens.append(("num", rational(int(num), int(text[j + 1 : k])), col))
                    col += k - i
                    i = k
                else:
                    self.tokens.append(("num", rational(int(num)), col))
                    col += j - i
                    i = j
                continue
            if ch.isalpha():
                if ch not in ALLOWED_VARS:
                    raise ParseError("unknown variable %r" % ch, self.line, col)
                if i + 1 < len(text) and text[i + 1].isalnum():
                    raise ParseError("multi-letter names are not allowed", self.line, col)
                self.tokens.append(("var", ch, col))
                i += 1
                col += 1
                continue
            if ch in "+-*^()@":
                self.tokens.append((ch, ch, col))
                i += 1
                col += 1
                continue
            raise ParseError("unexpected character %r" % ch, self.line, col)
        self.tokens.append(("end", None, col))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        t = self.tokens[self.idx]
        self.idx += 1
        return t


class PolyParser:
    """Recursive-descent parser for the polynomial grammar."""

    def __init__(self, vars, field=QQ):
        self.vars = tuple(vars)
        self.field = field
        for v in self.vars:
            if v not in ALLOWED_VARS:
                raise ParseError("variable %r outside the supported alphabet" % v)

    def parse(self, text, line=1):
        lex = _Lexer(text, line)
        p = self._expr(lex)
        kind, _, col = lex.peek()
        if kind != "end":
            raise ParseError("trailing input (implicit multiplication is forbidden?)", line, col)
        return p

    def _expr(self, lex):
        kind, _, _ = lex.peek()
        negate = False
        if kind in ("+", "-"):
            lex.next()
            negate = kind == "-"
        p = self._term(lex)
        if negate:
            p = -p
        while True:
            kind, _, _ = lex.peek()
            if kind == "+":
                lex.next()
                p = p + self._term(lex)
            elif kind == "-":
                lex.next()
                p = p - self._term(lex)
            else:
                return p

    def _term(self, lex):
        p = self._power(lex)
        while True:
            kind, _, col = lex.peek()
            if kind == "*":
                lex.next()
                p = p * self._power(lex)
            elif kind in ("num", "var", "@", "("):
                raise ParseError("implicit multiplication is forbidden", lex.line, col)
            else:
                return p

    def _power(self, lex):
        base = self._atom(lex)
        kind, _, _ = lex.peek()
        if kind == "^":
            lex.next()
            k2, val, col = lex.next()
            if k2 != "num" or getattr(val, "denominator", 1) != 1 or val < 0:
                raise ParseError("exponent must be a nonnegative integer", lex.line, col)
            return base ** int(val)
        return base

    def _atom(self, lex):
        kind, val, col = lex.next()
        if kind == "num":
            return Poly.const(val, self.vars, self.field)
        if kind == "var":
            if val not in self.vars:
                raise ParseError("variable %r not declared for this input" % val, lex.line, col)
            return Poly.var(val, self.vars, self.field)
        if kind == "@":
            if not self.field.is_extension:
                raise ParseError("'@' used without a field: declaration", lex.line, col)
            return Poly.const(self.field.gen(), self.vars, self.field)
        if kind == "(":
            p = self._expr(lex)
            k2, _, col2 = lex.next()
            if k2 != ")":
                raise ParseError("missing ')'", lex.line, col2)
            return p
        if kind == "-":
            return -self._atom(lex)
        raise ParseError("unexpected token", lex.line, col)


def parse_poly(text, vars, field=QQ, line=1):
    return PolyParser(vars, field).parse(text, line)


# ----------------------------------------------------------------------
# canonical printing


def _degrevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)), exp)


def sorted_exponents(p):
    """Exponents of p sorted descending: degrevlex first, then lex."""
    return sorted(p.terms, key=_degrevlex_key, reverse=True)


def format_rational(c):
    n, d = int(c.numerator), int(c.denominator)
    if d == 1:
        return str(n)
    return "%d/%d" % (n, d)


def format_scalar(c):
    if is_rational_scalar(c):
        return format_rational(c)
    parts = []
    for i, coord in enumerate(c.coords):
        if coord == 0:
            continue
        if i == 0:
            parts.append(format_rational(coord))
        else:
            head = "@" if i == 1 else "@^%d" % i
            if coord == 1:
                parts.append(head)
            elif coord == -1:
                parts.append("-" + head)
            else:
                parts.append("%s*%s" % (format_rational(coord), head))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _format_monomial(exp, vars):
    pieces = []
    for v, e in zip(vars, exp):
        if e == 0:
            continue
        pieces.append(v if e == 1 else "%s^%d" % (v, e))
    return "*".join(pieces)


def format_poly(p):
    """Canonical text form; ``parse_poly`` round-trips it bit-exactly."""
    if p.is_zero():
        return "0"
    out = []
    for exp in sorted_exponents(p):
        c = p.terms[exp]
        mono = _format_monomial(exp, p.vars)
        r = c if is_rational_scalar(c) else c.as_rational()
        if r is not None:
            neg = r < 0
            mag = -r if neg else r
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (format_rational(mag), mono)
            sign = "-" if neg else "+"
        else:
            sign = "+"
            s = "(%s)" % format_scalar(c)
            body = s if not mono else "%s*%s" % (s, mono)
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append("%s %s" % (sign, body))
    return " ".join(out)
