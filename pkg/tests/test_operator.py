from fractions import Fraction
from itertools import product

import pytest

from e6cs.algebra import K, ZPoly, kr
from e6cs.operator import (
    apply,
    apply_monomial,
    check_triangular,
    default_operator,
    epsilon,
    operator_symmetry_defects,
    solve_b0_from_monomials,
)
from e6cs.reps import character_to_z, monomial_to_z
from e6cs.structure import fundamental_weight, inner_weight
from e6cs.textio import parse_zpoly

OP = default_operator()
ZERO = (0,) * 6


def test_epsilon():
    m = (1, 0, 0, 0, 0, 0)
    assert epsilon(m, 0) == Fraction(8, 3)
    assert epsilon(m, 1) == Fraction(8, 3) + 32
    assert epsilon(m) == K * 32 + Fraction(8, 3)


def test_duality_invariant():
    assert operator_symmetry_defects() == []


def test_second_order_part_is_coupling_free():
    for row in OP.a:
        for p in row:
            assert all(c.is_constant() for c in p.terms.values())


def test_b_split():
    assert OP.b0[0] == parse_zpoly("8/3 z1")
    assert OP.b1[0] == parse_zpoly("32 z1")
    assert OP.b(K)[1] == parse_zpoly("(44 k + 4) z2 + 24 (k - 1)")


@pytest.mark.parametrize("n", [e for e in product(range(3), repeat=6) if sum(e) <= 3])
def test_triangular_up_to_degree_3(n):
    check_triangular(n)


def test_apply_monomial_matches_apply():
    for n in [(1, 0, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0), (2, 0, 0, 0, 0, 1)]:
        direct = apply(OP, ZPoly.monomial(n))
        via = ZPoly({e: kr(c0) + K * c1 for e, c0, c1 in apply_monomial(n)})
        assert direct == via


def test_b0_reconstruction():
    want = ["8/3 z1", "4 z2 - 24", "20/3 z3 - 20 z6", "12 z4 - 16 z1 z6 - 24 z2 + 36",
            "20/3 z5 - 20 z1", "8/3 z6"]
    got = solve_b0_from_monomials()
    assert got == tuple(parse_zpoly(w) for w in want)
    assert got == OP.b0


@pytest.mark.parametrize("lam", [e for e in product(range(3), repeat=6) if 0 < sum(e) <= 2])
def test_classical_limit_on_monomials(lam):
    M = monomial_to_z(lam)
    assert apply(OP, M, 0) == M.scale(2 * inner_weight(lam, lam))


@pytest.mark.parametrize("lam", [fundamental_weight(i) for i in range(1, 7)] + [(1, 0, 0, 0, 0, 1)])
def test_characters_at_coupling_one(lam):
    chi = character_to_z(lam)
    assert apply(OP, chi, 1) == chi.scale(epsilon(lam, 1))


def test_apply_linear():
    p, q = parse_zpoly("z1 z2 - k z3"), parse_zpoly("z6^2 + 1/(1 + k)")
    assert apply(OP, p + q) == apply(OP, p) + apply(OP, q)
    assert apply(OP, ZPoly.constant(1)).is_zero()
    assert ZERO not in apply(OP, ZPoly.var(1)).terms
