"""The Calogero-Sutherland operator for E6 written in the fundamental
characters z1..z6:

    D = sum_{j,k} a_jk d_j d_k + sum_j (b0_j + k b1_j) d_j

The double sum runs over all ordered pairs (a_kj = a_jk).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import NVARS, K, KappaRational, ZPoly, kr, unit_exp
from .corpus import data_path, read_corpus_file
from .structure import RHO, fundamental_weight, inner_weight, weight_to_root_int
from .textio import parse_zpoly


class ConsistencyError(RuntimeError):
    """The coefficient tables contradict a structural property of the operator."""


@dataclass(frozen=True)
class OperatorSpec:
    a: tuple  # 6x6, symmetric, ZPoly entries
    b0: tuple
    b1: tuple

    def b(self, kappa=K) -> tuple:
        kappa = kr(kappa)
        return tuple(x + y.scale(kappa) for x, y in zip(self.b0, self.b1))

    def dump(self) -> list:
        """(name, ZPoly) pairs in table order."""
        out = []
        for j in range(NVARS):
            for k in range(j, NVARS):
                out.append((f"a{j + 1}{k + 1}", self.a[j][k]))
        for j in range(NVARS):
            out.append((f"b{j + 1}^(0)", self.b0[j]))
        for j in range(NVARS):
            out.append((f"b{j + 1}^(1)", self.b1[j]))
        return out


def load_operator(path=None) -> OperatorSpec:
    entries = {e.id: e for e in read_corpus_file(path or data_path("operator.txt"))}
    a = [[None] * NVARS for _ in range(NVARS)]
    for j in range(NVARS):
        for k in range(j, NVARS):
            p = parse_zpoly(entries[f"a{j + 1}{k + 1}"].payload)
            if any(not c.is_constant() for c in p.terms.values()):
                raise ConsistencyError(f"a{j + 1}{k + 1} depends on the coupling")
            a[j][k] = a[k][j] = p
    b0, b1 = [], []
    for j in range(NVARS):
        b = parse_zpoly(entries[f"b{j + 1}"].payload)
        lo, hi = b.eval_kappa(0), b.eval_kappa(1)
        slope = hi - lo
        if b.eval_kappa(2) != lo + slope.scale(2):
            raise ConsistencyError(f"b{j + 1} is not affine in the coupling")
        b0.append(lo)
        b1.append(slope)
    return OperatorSpec(tuple(tuple(r) for r in a), tuple(b0), tuple(b1))


@lru_cache(maxsize=None)
def default_operator() -> OperatorSpec:
    return load_operator()


def epsilon(m, kappa=K):
    """Eigenvalue 2(m, m) + 4 kappa (m, rho); kappa may be symbolic or a number."""
    m = tuple(m)
    c0 = 2 * inner_weight(m, m)
    c1 = 4 * inner_weight(m, RHO)
    if isinstance(kappa, KappaRational):
        return kappa * c1 + c0
    return c0 + c1 * Fraction(kappa)


def epsilon_parts(m) -> tuple:
    m = tuple(m)
    return 2 * inner_weight(m, m), 4 * inner_weight(m, RHO)


def apply(op: OperatorSpec, p: ZPoly, kappa=K) -> ZPoly:
    """Apply the operator to p at the given coupling (symbolic by default)."""
    b = op.b(kappa)
    out = ZPoly()
    firsts = [p.partial(j) for j in range(1, NVARS + 1)]
    for j in range(NVARS):
        if firsts[j].is_zero():
            continue
        out = out + b[j] * firsts[j]
        for k in range(j, NVARS):
            second = firsts[j].partial(k + 1)
            if second.is_zero():
                continue
            term = op.a[j][k] * second
            out = out + (term if j == k else term.scale(2))
    return out


# ---------------------------------------------------------------------------
# action on monomials, as used by the solvers
# ---------------------------------------------------------------------------


class _Compiled:
    """Operator tables flattened to (exponent, c0, c1) lists with Fractions."""

    def __init__(self, op: OperatorSpec):
        self.second = []
        for j in range(NVARS):
            for k in range(j, NVARS):
                fac = 1 if j == k else 2
                terms = [(e, c.constant_value() * fac) for e, c in op.a[j][k].terms.items()]
                self.second.append((j, k, terms))
        self.first = []
        for j in range(NVARS):
            lo = {e: c.constant_value() for e, c in op.b0[j].terms.items()}
            hi = {e: c.constant_value() for e, c in op.b1[j].terms.items()}
            self.first.append((j, [(e, lo.get(e, 0), hi.get(e, 0)) for e in set(lo) | set(hi)]))


@lru_cache(maxsize=None)
def _compiled(op: OperatorSpec) -> _Compiled:
    return _Compiled(op)


@lru_cache(maxsize=200_000)
def _apply_monomial(op: OperatorSpec, n: tuple) -> tuple:
    comp = _compiled(op)
    acc: dict = {}

    def put(e, c0, c1):
        s = acc.get(e)
        if s is None:
            acc[e] = [c0, c1]
        else:
            s[0] += c0
            s[1] += c1

    for j, k, terms in comp.second:
        if j == k:
            f = n[j] * (n[j] - 1)
        else:
            f = n[j] * n[k]
        if not f:
            continue
        base = list(n)
        base[j] -= 1
        base[k] -= 1
        for e, c in terms:
            put(tuple(x + y for x, y in zip(base, e)), c * f, 0)
    for j, terms in comp.first:
        if not n[j]:
            continue
        base = list(n)
        base[j] -= 1
        for e, c0, c1 in terms:
            put(tuple(x + y for x, y in zip(base, e)), c0 * n[j], c1 * n[j])
    return tuple((e, Fraction(c0), Fraction(c1)) for e, (c0, c1) in acc.items() if c0 or c1)


def apply_monomial(n, op: OperatorSpec | None = None) -> tuple:
    """D z^n as a tuple of (exponent, c0, c1) meaning (c0 + c1*k) z^exponent."""
    return _apply_monomial(op or default_operator(), tuple(n))


def expansion_coefficients(n, op: OperatorSpec | None = None) -> dict:
    """k_{beta,n}: D z^n = sum_beta k_{beta,n} z^(n - beta), beta in root coordinates."""
    n = tuple(n)
    if min(n) < 0:
        raise ValueError(f"exponent {n} has negative entries")
    out = {}
    for e, c0, c1 in apply_monomial(n, op):
        beta = weight_to_root_int(tuple(x - y for x, y in zip(n, e)))
        if beta is None or min(beta) < 0:
            raise ConsistencyError(
                f"D z^{n} produced z^{e}: the weight drop is not a non-negative root combination")
        out[beta] = K * c1 + c0
    return out


def check_triangular(n, op: OperatorSpec | None = None) -> None:
    """Raise ConsistencyError unless D z^n stays below n with leading eigenvalue."""
    coeffs = expansion_coefficients(n, op)
    lead = coeffs.get((0,) * NVARS, kr(0))
    if lead != epsilon(n):
        raise ConsistencyError(f"leading coefficient of D z^{tuple(n)} is {lead}, expected {epsilon(n)}")


# ---------------------------------------------------------------------------
# reconstructing b^(0) from the monomial functions of the fundamental weights
# ---------------------------------------------------------------------------


def solve_b0_from_monomials(op: OperatorSpec | None = None, monomials=None) -> tuple:
    """Solve D^(0) M_i = 2(l_i, l_i) M_i for b^(0), given a_jk and the M_i.

    M_i = z_i + (terms in variables of lower height), so the system is
    triangular when the fundamental weights are taken by increasing height.
    ``monomials`` maps i (1..6) to M_{lambda_i}; by default they come from the
    character-expansion route in :mod:`e6cs.reps`.
    """
    from .reps import monomial_to_z

    op = op or default_operator()
    if monomials is None:
        monomials = {i: monomial_to_z(fundamental_weight(i)) for i in range(1, NVARS + 1)}
    heights = {i: inner_weight(fundamental_weight(i), RHO) for i in range(1, NVARS + 1)}
    order = sorted(range(1, NVARS + 1), key=lambda i: (heights[i], i))
    solved: dict[int, ZPoly] = {}
    for i in order:
        M = monomials[i]
        firsts = {j: M.partial(j) for j in range(1, NVARS + 1)}
        if firsts[i] != ZPoly.constant(1):
            raise ConsistencyError(f"d M_{i} / d z_{i} is not 1")
        rhs = M.scale(2 * inner_weight(fundamental_weight(i), fundamental_weight(i)))
        for j in range(1, NVARS + 1):
            for k in range(1, NVARS + 1):
                sec = firsts[j].partial(k)
                if not sec.is_zero():
                    rhs = rhs - op.a[j - 1][k - 1] * sec
        for j in range(1, NVARS + 1):
            if j == i or firsts[j].is_zero():
                continue
            if j not in solved:
                raise ConsistencyError(f"b^(0)_{i} needs b^(0)_{j}, which is not yet determined")
            rhs = rhs - solved[j] * firsts[j]
        solved[i] = rhs
    return tuple(solved[i] for i in range(1, NVARS + 1))


def operator_symmetry_defects(op: OperatorSpec | None = None) -> list:
    """Entries that break invariance under the diagram automorphism."""
    from .structure import DUALITY, dual

    op = op or default_operator()
    bad = []
    for j in range(NVARS):
        for k in range(j, NVARS):
            sj, sk = DUALITY[j], DUALITY[k]
            if op.a[j][k].map_exponents(dual) != op.a[sj][sk]:
                bad.append(f"a{j + 1}{k + 1}")
    for j in range(NVARS):
        sj = DUALITY[j]
        if op.b0[j].map_exponents(dual) != op.b0[sj] or op.b1[j].map_exponents(dual) != op.b1[sj]:
            bad.append(f"b{j + 1}")
    return bad


def fundamental_monomial(i: int) -> ZPoly:
    return ZPoly.monomial(unit_exp(i))
