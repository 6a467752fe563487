"""Weight multiplicities (Freudenthal), character expansions into monomial
symmetric functions, and monomial functions written in the fundamental
characters z1..z6.

A Weyl-invariant function is represented here by its "dominant dict": the
map from dominant weights mu to the coefficient of the orbit sum M_mu.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import ZPoly, unit_exp
from .structure import (
    RANK,
    RHO,
    fundamental_weight,
    inner_weight,
    is_dominant,
    positive_roots,
    root_to_weight,
    weyl_dimension,
)
from .weyl import dominant_representative, dominant_weights_below, orbit, orbit_size


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


@lru_cache(maxsize=256)
def _multiplicity_table(lam, pruned: bool = False) -> dict:
    lam = tuple(lam)
    table: dict = {}
    lam_norm = inner_weight(lam, lam)
    lam_rho2 = _add(lam, tuple(2 * r for r in RHO))
    roots = [(r, root_to_weight(r)) for r, _ in positive_roots()]
    for mu in dominant_weights_below(lam):
        if mu == lam:
            table[mu] = 1
            continue
        total = Fraction(0)
        for r, rw in roots:
            if pruned and inner_weight(_add(mu, rw), _add(mu, rw)) > lam_norm:
                continue
            nu = mu
            while True:
                nu = _add(nu, rw)
                n = table.get(dominant_representative(nu))
                if not n:
                    # alpha-strings through weights are unbroken
                    break
                total += 2 * n * sum(c * x for c, x in zip(r, nu))
        denom = inner_weight(_add(lam_rho2, mu), _sub(lam, mu))
        if denom == 0:
            raise ArithmeticError(f"vanishing Freudenthal denominator at mu={mu}")
        val = total / denom
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {val} at mu={mu}")
        table[mu] = int(val)
    return table


def freudenthal(lam, mu, *, pruned: bool = False) -> int:
    """Multiplicity of the weight mu in the irreducible representation R_lam.

    mu need not be dominant; it is reduced to its dominant representative.
    With pruned=True, roots alpha with |mu + alpha| > |lam| are skipped.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    return _multiplicity_table(lam, pruned).get(dominant_representative(mu), 0)


@dataclass(frozen=True)
class CharacterExpansion:
    highest: tuple
    terms: dict = field(hash=False)

    def orbit_sizes(self) -> dict:
        return {mu: orbit_size(mu) for mu in self.terms}

    def dimension_balance(self) -> int:
        return sum(m * orbit_size(mu) for mu, m in self.terms.items())


def character_expansion(lam) -> CharacterExpansion:
    lam = tuple(lam)
    table = _multiplicity_table(lam, False)
    exp = CharacterExpansion(lam, {mu: table[mu] for mu in dominant_weights_below(lam)})
    assert exp.terms[lam] == 1
    assert exp.dimension_balance() == weyl_dimension(lam)
    return exp


# ---------------------------------------------------------------------------
# products of Weyl-invariant functions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _full_support(items) -> tuple:
    out = []
    for mu, c in items:
        for w in orbit(mu).members:
            out.append((w, c))
    return tuple(out)


def _top(dom: dict):
    return max(dom, key=lambda w: (sum(x * y for x, y in zip(_heights(), w)), w))


@lru_cache(maxsize=None)
def _heights():
    # (lambda_i, rho) for each fundamental weight
    return tuple(inner_weight(fundamental_weight(i), RHO) for i in range(1, RANK + 1))


def multiply_invariant(f: dict, g: dict) -> dict:
    """Product of two Weyl-invariant functions given as dominant dicts.

    The coefficient of M_eta in f*g is sum_a f(a) g(dom(eta - a)) with a
    running over all weights (not just dominant ones) in the support of f.
    """
    if len(f) > len(g):
        f, g = g, f
    full_f = _full_support(tuple(sorted(f.items())))
    top = _add(_top(f), _top(g))
    out = {}
    for eta in dominant_weights_below(top):
        s = 0
        for a, c in full_f:
            b = g.get(dominant_representative(_sub(eta, a)))
            if b:
                s += c * b
        if s:
            out[eta] = s
    return out


@lru_cache(maxsize=None)
def fundamental_character(i: int) -> dict:
    return dict(character_expansion(fundamental_weight(i)).terms)


@lru_cache(maxsize=None)
def z_monomial_expansion(m) -> dict:
    """Expansion of z^m = prod_i chi_{lambda_i}^{m_i} in monomial symmetric functions."""
    m = tuple(m)
    if not any(m):
        return {m: 1}
    i = max(j for j in range(RANK) if m[j])
    rest = tuple(x - (j == i) for j, x in enumerate(m))
    return multiply_invariant(dict(z_monomial_expansion(rest)), fundamental_character(i + 1))


@lru_cache(maxsize=None)
def monomial_to_z(lam) -> ZPoly:
    """M_lam written as a polynomial in z1..z6 (kappa-free coefficients).

    Inverts the unitriangular relation z^lam = M_lam + sum_{mu<lam} c_mu M_mu.
    For a fundamental weight this is exactly the inversion of the character
    expansion chi_{lambda_i} = z_i.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    exp = z_monomial_expansion(lam)
    assert exp.get(lam) == 1
    out = ZPoly.monomial(lam)
    for mu, c in exp.items():
        if mu != lam:
            out = out - monomial_to_z(mu).scale(c)
    return out


def character_to_z(lam) -> ZPoly:
    """chi_lam in z-variables, from its monomial expansion."""
    out = ZPoly()
    for mu, c in character_expansion(lam).terms.items():
        out = out + monomial_to_z(mu).scale(c)
    return out


def fundamental_z(i: int) -> ZPoly:
    return ZPoly.monomial(unit_exp(i))
