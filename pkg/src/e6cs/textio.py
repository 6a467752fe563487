"""Canonical text and JSON forms, plus a small expression parser.

Grammar (ASCII; the coupling is spelled ``k``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'k' | 'z1'..'z6' | 'P[' label ']' | NAME | '(' expr ')'

Division is only allowed by expressions free of z and P. ``NAME`` refers to a
constant supplied by the caller (e.g. ``n`` or auxiliary coefficients).
"""
from __future__ import annotations

import json
import re

from .algebra import (
    NVARS,
    ZERO_EXP,
    K,
    KappaRational,
    ZPoly,
    format_kpoly,
    format_monomial,
    kr,
    term_order_key,
)


class ParseError(ValueError):
    def __init__(self, msg, text, pos):
        self.pos = pos
        caret = " " * pos + "^"
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {caret}")


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<plab>P\[[0-9,\s]*\])|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


def parse_label(s: str) -> tuple:
    s = s.strip()
    if "," in s:
        parts = [int(x) for x in s.split(",")]
    else:
        parts = [int(ch) for ch in s]
    if len(parts) != NVARS:
        raise ValueError(f"label {s!r} must have {NVARS} entries")
    return tuple(parts)


def format_label(m) -> str:
    if all(0 <= x < 10 for x in m):
        return "".join(str(x) for x in m)
    return ",".join(str(x) for x in m)


# Internal value: dict mapping (z-exponent, P-label or None) -> KappaRational.
_CONST = (ZERO_EXP, None)


def _v_const(c):
    c = kr(c)
    return {_CONST: c} if c else {}


def _v_add(a, b, sign=1):
    out = dict(a)
    for key, c in b.items():
        s = out.get(key)
        v = c if sign == 1 else -c
        v = v if s is None else s + v
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _v_mul(a, b, text, pos):
    out = {}
    for (e1, p1), c1 in a.items():
        for (e2, p2), c2 in b.items():
            if p1 is not None and p2 is not None:
                raise ParseError("product of two P terms", text, pos)
            key = (tuple(x + y for x, y in zip(e1, e2)), p1 if p1 is not None else p2)
            v = c1 * c2
            s = out.get(key)
            out[key] = v if s is None else s + v
    return {k_: c for k_, c in out.items() if c}


def _v_scalar(a, text, pos):
    if not a:
        return kr(0)
    if set(a) != {_CONST}:
        raise ParseError("divisor must not depend on z or P", text, pos)
    return a[_CONST]


class _Parser:
    def __init__(self, text, env):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env or {}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise ParseError(f"expected {val!r}, found {t[1] or 'end of input'!r}", self.text, t[2])

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", self.text, t[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            v = _v_add(v, self.term(), 1 if op == "+" else -1)
        return v

    def _starts_atom(self, t):
        return t[0] in ("int", "name", "plab") or (t[0] == "op" and t[1] == "(")

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                v = _v_mul(v, self.unary(), self.text, t[2])
            elif t[0] == "op" and t[1] == "/":
                self.take()
                pos = self.peek()[2]
                d = _v_scalar(self.unary(), self.text, pos)
                if not d:
                    raise ParseError("division by zero", self.text, pos)
                inv = d.inverse()
                v = {key: c * inv for key, c in v.items()}
            elif self._starts_atom(t):
                v = _v_mul(v, self.power(), self.text, t[2])
            else:
                return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return v if t[1] == "+" else {key: -c for key, c in v.items()}
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise ParseError("exponent must be a non-negative integer", self.text, e[2])
            out = _v_const(1)
            for _ in range(int(e[1])):
                out = _v_mul(out, base, self.text, e[2])
            return out
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return _v_const(int(val))
        if kind == "plab":
            try:
                lab = parse_label(val[2:-1])
            except ValueError as exc:
                raise ParseError(str(exc), self.text, pos) from None
            return {(ZERO_EXP, lab): kr(1)}
        if kind == "name":
            if val in ("k", "kappa"):
                return {_CONST: K}
            m = re.fullmatch(r"z(\d+)", val)
            if m:
                j = int(m.group(1))
                if not 1 <= j <= NVARS:
                    raise ParseError(f"unknown variable {val!r}", self.text, pos)
                e = [0] * NVARS
                e[j - 1] = 1
                return {(tuple(e), None): kr(1)}
            if val in self.env:
                return _v_const(self.env[val])
            raise ParseError(f"unknown name {val!r}", self.text, pos)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected token {val or 'end of input'!r}", self.text, pos)


def parse_value(text: str, env=None) -> dict:
    return _Parser(text, env).parse()


def parse_zpoly(text: str, env=None) -> ZPoly:
    """Parse an expression in z1..z6 and k into a ZPoly."""
    v = parse_value(text, env)
    terms = {}
    for (e, p), c in v.items():
        if p is not None:
            raise ParseError("P terms are not allowed in a polynomial", text, 0)
        terms[e] = c
    return ZPoly._raw(terms)


def parse_kappa(text: str, env=None) -> KappaRational:
    v = parse_value(text, env)
    return _v_scalar(v, text, 0)


def parse_series(text: str, env=None) -> dict:
    """Parse sum_i c_i * P[label_i] into {label: KappaRational}."""
    v = parse_value(text, env)
    out = {}
    for (e, p), c in v.items():
        if p is None or any(e):
            raise ParseError("series terms must be z-free multiples of P[...]", text, 0)
        out[p] = c
    return out


def format_zpoly(p: ZPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in p.sorted_exponents():
        mon = format_monomial(e)
        c = str(p.terms[e])
        parts.append(f"{c}*{mon}" if mon else c)
    return " + ".join(parts)


def format_series(terms) -> str:
    """terms: iterable of (label, KappaRational) in display order."""
    parts = [f"{kr(c)}*P[{format_label(m)}]" for m, c in terms]
    return " + ".join(parts) if parts else "0"


def zpoly_to_json(p: ZPoly) -> dict:
    return {
        "terms": [
            {"exp": list(e), "num": list(p.terms[e].num.coeffs), "den": list(p.terms[e].den.coeffs)}
            for e in p.sorted_exponents()
        ]
    }


def zpoly_from_json(obj) -> ZPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return ZPoly({tuple(t["exp"]): KappaRational(t["num"], t["den"]) for t in obj["terms"]})


def kappa_to_json(c) -> dict:
    c = kr(c)
    return {"num": list(c.num.coeffs), "den": list(c.den.coeffs)}


def parse_rational(text: str):
    """Parse 'p' or 'p/q' as a Fraction (used for --kappa)."""
    from fractions import Fraction

    return Fraction(text.strip())


__all__ = [
    "ParseError",
    "format_kpoly",
    "format_label",
    "format_series",
    "format_zpoly",
    "kappa_to_json",
    "parse_kappa",
    "parse_label",
    "parse_rational",
    "parse_series",
    "parse_value",
    "parse_zpoly",
    "term_order_key",
    "zpoly_from_json",
    "zpoly_to_json",
]
