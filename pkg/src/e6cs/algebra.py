"""Exact arithmetic: integer polynomials in k, reduced rational functions of k,
and sparse polynomials in z1..z6 with rational-function coefficients.

Integer polynomials are stored as tuples of Python ints, lowest power first,
with trailing zeros stripped (the zero polynomial is the empty tuple).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from numbers import Rational

NVARS = 6

# ---------------------------------------------------------------------------
# integer polynomial helpers on tuples
# ---------------------------------------------------------------------------


def _strip(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _strip(out)


def _psub(a, b):
    return _padd(a, tuple(-x for x in b))


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        s = a[0]
        return tuple(s * x for x in b)
    if len(b) == 1:
        s = b[0]
        return tuple(s * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pscale(a, s):
    if not s:
        return ()
    return tuple(s * x for x in a)


def _content(a):
    g = 0
    for x in a:
        g = igcd(g, x)
        if g == 1:
            break
    return g


def _primitive(a):
    if not a:
        return a
    g = _content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(x // g for x in a)


def _prem(a, b):
    """Pseudo-remainder of a by b (b nonzero)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        r = list(_strip(r))
    return tuple(r)


def _pdiv_exact(a, b):
    """Exact quotient a / b in Z[k]; raises ArithmeticError if not exact."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(b) == 1:
        d = b[0]
        q = []
        for x in a:
            if x % d:
                raise ArithmeticError("inexact polynomial division")
            q.append(x // d)
        return tuple(q)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        if lr % lb:
            raise ArithmeticError("inexact polynomial division")
        c = lr // lb
        shift = len(r) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] -= c * y
        r = list(_strip(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _strip(q)


def _pgcd_primitive(a, b):
    # primitive polynomial remainder sequence; a, b primitive and nonzero
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return _primitive(a)


def _pgcd(a, b):
    """gcd in Z[k], normalized to a positive leading coefficient."""
    if not a:
        return _primitive(b) if not b else _sign_norm(b)
    if not b:
        return _sign_norm(a)
    ca, cb = _content(a), _content(b)
    c = igcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        return (c,)
    pa = tuple(x // ca for x in a)
    pb = tuple(x // cb for x in b)
    if pa == pb or pa == tuple(-x for x in pb):
        g = _primitive(pa)
    else:
        g = _heugcd(pa, pb)
        if g is None:
            g = _pgcd_primitive(_primitive(pa), _primitive(pb))
    return _pscale(g, c) if c != 1 else g


def _sign_norm(a):
    return tuple(-x for x in a) if a[-1] < 0 else a


def _peval_int(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _interp_symmetric(h, x):
    """Recover a polynomial from its value h at x using balanced digits."""
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return tuple(out)


def _heugcd(a, b):
    """Heuristic gcd by evaluation at a large integer; None when it gives up.

    a and b are primitive. The candidate is always verified by exact division,
    so a returned value is a true gcd.
    """
    bound = max(max(abs(x) for x in a), max(abs(x) for x in b))
    x = 2 * bound + 29
    for _ in range(6):
        ha, hb = _peval_int(a, x), _peval_int(b, x)
        if ha and hb:
            h = igcd(ha, hb)
            g = _primitive(_interp_symmetric(h, x))
            if g:
                try:
                    _pdiv_exact(a, g)
                    _pdiv_exact(b, g)
                    return g
                except ArithmeticError:
                    pass
        x = x * 73794 // 27011
    return None


def _peval(a, x: Fraction):
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


class KappaPoly:
    """Polynomial in k with integer coefficients (index = power of k)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, KappaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return KappaPoly(_padd(self.coeffs, _as_poly(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return KappaPoly(_psub(self.coeffs, _as_poly(other)))

    def __rsub__(self, other):
        return KappaPoly(_psub(_as_poly(other), self.coeffs))

    def __neg__(self):
        return KappaPoly(tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        return KappaPoly(_pmul(self.coeffs, _as_poly(other)))

    __rmul__ = __mul__

    def content(self) -> int:
        return _content(self.coeffs)

    def gcd(self, other: KappaPoly) -> KappaPoly:
        return KappaPoly(_pgcd(self.coeffs, other.coeffs))

    def exact_div(self, other: KappaPoly) -> KappaPoly:
        return KappaPoly(_pdiv_exact(self.coeffs, other.coeffs))

    def __call__(self, x) -> Fraction:
        return _peval(self.coeffs, Fraction(x))

    def __str__(self):
        return format_kpoly(self.coeffs)

    def __repr__(self):
        return f"KappaPoly({list(self.coeffs)})"


def _as_poly(x):
    if isinstance(x, KappaPoly):
        return x.coeffs
    if isinstance(x, int):
        return _strip((x,))
    raise TypeError(f"cannot use {type(x).__name__} as an integer polynomial")


def format_kpoly(c) -> str:
    if not c:
        return "0"
    parts = []
    for i, x in enumerate(c):
        if not x:
            continue
        mag = abs(x)
        if i == 0:
            body = str(mag)
        else:
            mon = "k" if i == 1 else f"k^{i}"
            body = mon if mag == 1 else f"{mag}*{mon}"
        if not parts:
            parts.append(("-" if x < 0 else "") + body)
        else:
            parts.append((" - " if x < 0 else " + ") + body)
    return "".join(parts)


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


class KappaRational:
    """Reduced ratio num/den of integer polynomials in k.

    Canonical form: gcd(num, den) = 1 in Z[k] (content included) and the
    leading coefficient of den is positive. Zero is 0/1.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num=(), den=(1,), *, _canonical=False):
        if isinstance(num, KappaPoly):
            num = num.coeffs
        if isinstance(den, KappaPoly):
            den = den.coeffs
        if _canonical:
            self._n, self._d = num, den
            return
        n, d = _strip(tuple(num)), _strip(tuple(den))
        if not d:
            raise ZeroDivisionError("zero denominator")
        self._n, self._d = _reduce(n, d)

    # construction helpers -------------------------------------------------
    @classmethod
    def from_value(cls, x) -> KappaRational:
        if isinstance(x, KappaRational):
            return x
        if isinstance(x, KappaPoly):
            return cls(x.coeffs, (1,), _canonical=True)
        if isinstance(x, int):
            return cls(_strip((x,)), (1,), _canonical=True)
        if isinstance(x, Rational):
            f = Fraction(x)
            return cls(_strip((f.numerator,)), (f.denominator,), _canonical=True)
        raise TypeError(f"cannot convert {type(x).__name__} to KappaRational")

    @classmethod
    def kappa(cls) -> KappaRational:
        return cls((0, 1), (1,), _canonical=True)

    @property
    def num(self) -> KappaPoly:
        return KappaPoly(self._n)

    @property
    def den(self) -> KappaPoly:
        return KappaPoly(self._d)

    def is_zero(self) -> bool:
        return not self._n

    def is_constant(self) -> bool:
        return len(self._n) <= 1 and len(self._d) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on k")
        return Fraction(self._n[0] if self._n else 0, self._d[0])

    def __bool__(self):
        return bool(self._n)

    def __eq__(self, other):
        if not isinstance(other, KappaRational):
            try:
                other = KappaRational.from_value(other)
            except TypeError:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((self._n, self._d))

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, KappaRational):
            try:
                other = KappaRational.from_value(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self._n, self._d, other._n, other._d
        if not a:
            return other
        if not c:
            return self
        if b == (1,) and d == (1,):
            return KappaRational(_padd(a, c), (1,), _canonical=True)
        if b == d:
            t = _padd(a, c)
            if not t:
                return _ZERO
            g = _pgcd(t, b)
            if g == (1,):
                return KappaRational(t, b, _canonical=True)
            return KappaRational(_pdiv_exact(t, g), _pdiv_exact(b, g), _canonical=True)
        g = _pgcd(b, d)
        if g == (1,):
            t = _padd(_pmul(a, d), _pmul(c, b))
            if not t:
                return _ZERO
            return KappaRational(t, _pmul(b, d), _canonical=True)
        bg, dg = _pdiv_exact(b, g), _pdiv_exact(d, g)
        t = _padd(_pmul(a, dg), _pmul(c, bg))
        if not t:
            return _ZERO
        # Henrici: only gcd(t, g) can survive in t / (b*d/g)
        g2 = _pgcd(t, g)
        if g2 != (1,):
            t = _pdiv_exact(t, g2)
            d = _pdiv_exact(d, g2)
        return KappaRational(*_fix_sign(t, _pmul(bg, d)), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return KappaRational(tuple(-x for x in self._n), self._d, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, KappaRational):
            try:
                other = KappaRational.from_value(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, KappaRational):
            if isinstance(other, int):
                if not other or not self._n:
                    return _ZERO
                g = igcd(other, _content(self._d))
                return KappaRational(_pscale(self._n, other // g),
                                     tuple(x // g for x in self._d), _canonical=True)
            try:
                other = KappaRational.from_value(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self._n, self._d, other._n, other._d
        if not a or not c:
            return _ZERO
        if b == (1,) and d == (1,):
            return KappaRational(_pmul(a, c), (1,), _canonical=True)
        g1 = _pgcd(a, d)
        g2 = _pgcd(c, b)
        if g1 != (1,):
            a, d = _pdiv_exact(a, g1), _pdiv_exact(d, g1)
        if g2 != (1,):
            c, b = _pdiv_exact(c, g2), _pdiv_exact(b, g2)
        return KappaRational(*_fix_sign(_pmul(a, c), _pmul(b, d)), _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> KappaRational:
        if not self._n:
            raise ZeroDivisionError("inverse of the zero rational function")
        return KappaRational(*_fix_sign(self._d, self._n), _canonical=True)

    def __truediv__(self, other):
        if not isinstance(other, KappaRational):
            try:
                other = KappaRational.from_value(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return KappaRational.from_value(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = _ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # evaluation / formatting -------------------------------------------------
    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        d = _peval(self._d, x)
        if not d:
            raise PoleError(f"denominator {format_kpoly(self._d)} vanishes at k = {x}")
        return _peval(self._n, x) / d

    def __str__(self):
        return f"({format_kpoly(self._n)})/({format_kpoly(self._d)})"

    def __repr__(self):
        return f"KappaRational({self})"


def _fix_sign(n, d):
    if d[-1] < 0:
        return tuple(-x for x in n), tuple(-x for x in d)
    return n, d


def _reduce(n, d):
    if not n:
        return (), (1,)
    g = _pgcd(n, d)
    if g != (1,):
        n, d = _pdiv_exact(n, g), _pdiv_exact(d, g)
    return _fix_sign(n, d)


_ZERO = KappaRational((), (1,), _canonical=True)
_ONE = KappaRational((1,), (1,), _canonical=True)
K = KappaRational.kappa()


def kr(x) -> KappaRational:
    """Coerce an int, Fraction or KappaPoly to a KappaRational."""
    return KappaRational.from_value(x)


def kr_add(a, b):
    return kr(a) + kr(b)


def kr_mul(a, b):
    return kr(a) * kr(b)


def kr_neg(a):
    return -kr(a)


def kr_inv(a):
    return kr(a).inverse()


# ---------------------------------------------------------------------------
# sparse polynomials in z1..z6
# ---------------------------------------------------------------------------

ZERO_EXP = (0,) * NVARS


def unit_exp(j: int) -> tuple:
    """Exponent tuple of the variable z_j (1-based)."""
    e = [0] * NVARS
    e[j - 1] = 1
    return tuple(e)


def term_order_key(e):
    """Graded lexicographic key; larger keys print first."""
    return (sum(e), e)


class ZPoly:
    """Sparse polynomial in z1..z6 with KappaRational coefficients.

    Treated as immutable: the term dict is never mutated after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != NVARS or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                c = kr(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c) -> ZPoly:
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, j: int) -> ZPoly:
        if not 1 <= j <= NVARS:
            raise ValueError(f"variable index {j} out of range 1..{NVARS}")
        return cls({unit_exp(j): 1})

    @classmethod
    def monomial(cls, exp, coeff=1) -> ZPoly:
        return cls({tuple(exp): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp) -> KappaRational:
        return self.terms.get(tuple(exp), _ZERO)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, ZPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Rational, KappaRational)):
            return self.terms == ZPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, ZPoly):
            return other
        return ZPoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return ZPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ZPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> ZPoly:
        c = kr(c)
        if not c:
            return ZPoly._raw({})
        return ZPoly._raw({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ZPoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = c1 * c2
                s = out.get(e)
                out[e] = v if s is None else s + v
        return ZPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ZPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def partial(self, j: int) -> ZPoly:
        """Formal derivative with respect to z_j (1-based)."""
        if not 1 <= j <= NVARS:
            raise ValueError(f"variable index {j} out of range 1..{NVARS}")
        i = j - 1
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return ZPoly._raw(out)

    def eval_kappa(self, k0) -> ZPoly:
        """Specialize every coefficient at k = k0 (exact rational)."""
        k0 = Fraction(k0)
        out = {}
        for e in self.sorted_exponents():
            c = self.terms[e]
            try:
                v = c(k0)
            except PoleError as exc:
                raise PoleError(f"term {format_monomial(e) or '1'}: {exc}") from None
            if v:
                out[e] = kr(v)
        return ZPoly._raw(out)

    def map_exponents(self, f) -> ZPoly:
        return ZPoly({f(e): c for e, c in self.terms.items()})

    def sorted_exponents(self):
        return sorted(self.terms, key=term_order_key, reverse=True)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __str__(self):
        from .textio import format_zpoly

        return format_zpoly(self)

    def __repr__(self):
        return f"ZPoly({self})"


def format_monomial(e) -> str:
    parts = []
    for i, x in enumerate(e, 1):
        if x == 1:
            parts.append(f"z{i}")
        elif x:
            parts.append(f"z{i}^{x}")
    return "*".join(parts)


def zp_add(p: ZPoly, q: ZPoly) -> ZPoly:
    return p + q


def zp_mul(p: ZPoly, q: ZPoly) -> ZPoly:
    return p * q


def zp_partial(p: ZPoly, j: int) -> ZPoly:
    return p.partial(j)


def zp_eval_kappa(p: ZPoly, k0) -> ZPoly:
    return p.eval_kappa(k0)
