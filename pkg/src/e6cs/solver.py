"""Eigenpolynomials P_m of the operator, by the iterative formula and by
projection, with coefficients exact in the coupling k.

P_m = sum_{mu} c_mu z^(m - mu) with c_0 = 1; the exponents m - mu run over
the dominant weights below m (a non-negative exponent vector is a dominant
weight).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import K, KappaRational, PoleError, ZPoly, kr
from .operator import (
    ConsistencyError,
    OperatorSpec,
    apply,
    apply_monomial,
    default_operator,
    epsilon,
)
from .structure import RHO, inner_weight, is_dominant, weight_to_root_int
from .weyl import dominant_weights_below

ITERATIVE = "iterative"
PROJECTION = "projection"


@dataclass(frozen=True)
class EigenPolynomial:
    m: tuple
    poly: ZPoly
    method: str
    kappa: Fraction | None = None  # None: symbolic coupling
    max_height: int | None = None  # truncation depth, None for the full polynomial

    def __str__(self):
        return str(self.poly)


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------


class _Symbolic:
    kappa = None
    zero = kr(0)
    one = kr(1)

    @staticmethod
    @lru_cache(maxsize=None)
    def lin(c0, c1):
        return K * c1 + c0 if c1 else kr(c0)

    @staticmethod
    def eps(m):
        return epsilon(m)

    @staticmethod
    def div(a, b, where):
        if not b:
            raise ConsistencyError(f"eigenvalue difference vanishes identically at {where}")
        return a / b

    @staticmethod
    def to_kr(x):
        return x


class _Fixed:
    """Arithmetic at one rational value of the coupling."""

    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, k0):
        self.kappa = Fraction(k0)

    def lin(self, c0, c1):
        return c0 + c1 * self.kappa

    def eps(self, m):
        return epsilon(m, self.kappa)

    def div(self, a, b, where):
        if not b:
            raise PoleError(f"eigenvalue difference vanishes at k = {self.kappa} ({where})")
        return a / b

    @staticmethod
    def to_kr(x):
        return kr(x)


def _field(kappa):
    if kappa is None or kappa is K:
        return _Symbolic
    if isinstance(kappa, KappaRational):
        if kappa == K:
            return _Symbolic
        return _Fixed(kappa.constant_value())
    return _Fixed(kappa)


def _height(w) -> Fraction:
    return inner_weight(w, RHO)


def _support(m, max_height):
    m = tuple(m)
    if not is_dominant(m):
        raise ValueError(f"label {m} is not dominant")
    top = _height(m)
    order = dominant_weights_below(m)
    if max_height is not None:
        order = tuple(p for p in order if top - _height(p) <= max_height)
    return order


# ---------------------------------------------------------------------------
# method 1: iterative formula
# ---------------------------------------------------------------------------


def solve_iterative(m, kappa=None, *, max_height=None, op: OperatorSpec | None = None) -> EigenPolynomial:
    """c_mu (e_m - e_{m-mu}) = sum_{beta != 0} k_{beta, m-mu+beta} c_{mu-beta}.

    Coefficients are fixed in order of increasing height of mu; each finished
    c is pushed into the accumulators of the lower monomials it feeds.
    With ``max_height`` only mu of height <= max_height are computed (every
    such coefficient is exact, since c_mu only depends on lower heights).
    ``kappa`` None means symbolic; a rational value solves at that coupling.
    """
    op = op or default_operator()
    F = _field(kappa)
    m = tuple(m)
    order = _support(m, max_height)
    index = set(order)
    eps_m = F.eps(m)
    acc: dict = {}
    coeffs: dict = {}
    for p in order:
        if p == m:
            c = F.one
        else:
            s = acc.pop(p, None)
            if s is None or not s:
                continue
            c = F.div(s, eps_m - F.eps(p), f"z^{p} in P_{m}")
            if not c:
                continue
        coeffs[p] = c
        for e, c0, c1 in apply_monomial(p, op):
            if e == p:
                continue
            if e not in index:
                if max_height is None or weight_to_root_int(tuple(x - y for x, y in zip(m, e))) is None:
                    raise ConsistencyError(f"D z^{p} produced z^{e} outside the support of P_{m}")
                continue
            v = c * F.lin(c0, c1)
            prev = acc.get(e)
            acc[e] = v if prev is None else prev + v
    poly = ZPoly._raw({e: F.to_kr(c) for e, c in coeffs.items()})
    return EigenPolynomial(m, poly, ITERATIVE, F.kappa, max_height)


# ---------------------------------------------------------------------------
# method 2: projection
# ---------------------------------------------------------------------------


def _shift_apply(poly: dict, shift, F, op) -> dict:
    """(D - shift) applied to {exp: coeff}."""
    out: dict = {}
    for p, c in poly.items():
        for e, c0, c1 in apply_monomial(p, op):
            v = c * F.lin(c0, c1)
            prev = out.get(e)
            out[e] = v if prev is None else prev + v
        prev = out.get(p)
        v = -(c * shift)
        out[p] = v if prev is None else prev + v
    return {e: c for e, c in out.items() if c}


def solve_projection(m, kappa=None, *, op: OperatorSpec | None = None) -> EigenPolynomial:
    """prod_nu (D - e_nu) z^m over the dominant nu < m, normalized at z^m.

    Each distinct eigenvalue is used once: the product of (D - e) over the
    distinct lower eigenvalues already annihilates every lower component.
    """
    op = op or default_operator()
    F = _field(kappa)
    m = tuple(m)
    order = _support(m, None)
    eps_m = F.eps(m)
    shifts = []
    for nu in order[1:]:
        e = F.eps(nu)
        if e == eps_m:
            raise PoleError(f"e_{nu} equals e_{m}: projection is singular")
        if e not in shifts:
            shifts.append(e)
    poly = {m: F.one}
    norm = F.one
    for e in shifts:
        poly = _shift_apply(poly, e, F, op)
        norm = norm * (eps_m - e)
    inv = F.one / norm
    out = ZPoly._raw({p: F.to_kr(c * inv) for p, c in poly.items()})
    return EigenPolynomial(m, out, PROJECTION, F.kappa)


def solve(m, method: str = ITERATIVE, kappa=None, **kw) -> EigenPolynomial:
    if method in (ITERATIVE, "iter"):
        return solve_iterative(m, kappa, **kw)
    if method in (PROJECTION, "proj"):
        return solve_projection(m, kappa, **kw)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=256)
def jacobi(m) -> ZPoly:
    """Symbolic P_m (cached)."""
    return solve_iterative(tuple(m)).poly


def monomial_function(m) -> ZPoly:
    """M_m, the k = 0 specialization of P_m.

    Solved directly at k = 0 when no eigenvalue difference vanishes there;
    otherwise the symbolic polynomial is specialized, which either cancels the
    degeneracy or raises PoleError naming m.
    """
    m = tuple(m)
    try:
        return solve_iterative(m, 0).poly
    except PoleError:
        pass
    try:
        return jacobi(m).eval_kappa(0)
    except PoleError as exc:
        raise PoleError(f"P_{m} has a pole at k = 0: {exc}") from None


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def eigen_residual(ep: EigenPolynomial | ZPoly, m=None, kappa=None, op: OperatorSpec | None = None) -> ZPoly:
    """D P - e_m P; zero for an eigenpolynomial (truncated ones excepted)."""
    if isinstance(ep, EigenPolynomial):
        m, poly = ep.m, ep.poly
        if kappa is None and ep.kappa is not None:
            kappa = ep.kappa
    else:
        poly = ep
    op = op or default_operator()
    k = K if kappa is None else kr(kappa)
    return apply(op, poly, k) - poly.scale(epsilon(m, k))


def support_violations(ep: EigenPolynomial) -> list:
    """Exponents of P_m outside {m - beta: beta >= 0 in the root lattice}, plus a bad leading term."""
    bad = []
    if ep.poly.coeff(ep.m) != 1:
        bad.append(ep.m)
    for e in ep.poly.terms:
        beta = weight_to_root_int(tuple(x - y for x, y in zip(ep.m, e)))
        if beta is None or min(beta) < 0 or min(e) < 0:
            bad.append(e)
    return bad
