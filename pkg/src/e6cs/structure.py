"""Static combinatorics of E6: Cartan matrix, positive roots, inner products,
Weyl vector and the Weyl dimension formula.

Weights are integer 6-tuples in the basis of fundamental weights; roots are
integer 6-tuples in the basis of simple roots. Node numbering follows the
Dynkin diagram 1-3-4-5-6 with node 2 attached to node 4. Indices are 1-based
in the public API and 0-based in storage.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

RANK = 6

CARTAN = (
    (2, 0, -1, 0, 0, 0),
    (0, 2, 0, -1, 0, 0),
    (-1, 0, 2, -1, 0, 0),
    (0, -1, -1, 2, -1, 0),
    (0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, -1, 2),
)

# order of the Weyl group, 2^7 * 3^4 * 5
WEYL_ORDER = 51840

# node permutation of the diagram automorphism: 1<->6, 3<->5
DUALITY = (5, 1, 4, 3, 2, 0)


def _invert(m):
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class CartanData:
    A: tuple
    A_inv: tuple


@lru_cache(maxsize=None)
def cartan() -> CartanData:
    return CartanData(CARTAN, _invert(CARTAN))


def cartan_entry(i: int, j: int) -> int:
    """A_ij with 1-based indices."""
    return CARTAN[i - 1][j - 1]


def inner_weight(x, y) -> Fraction:
    """(x, y) for weights in fundamental-weight coordinates."""
    ai = cartan().A_inv
    return sum((x[i] * ai[i][j] * y[j] for i in range(RANK) for j in range(RANK) if x[i] and y[j]),
               Fraction(0))


def inner_root_weight(a, y) -> Fraction:
    """(a, y) for a root in simple-root coordinates and a weight; (alpha_i, lambda_j) = delta_ij."""
    return Fraction(sum(ai * yi for ai, yi in zip(a, y)))


def inner_root(a, b) -> int:
    return sum(a[i] * CARTAN[i][j] * b[j] for i in range(RANK) for j in range(RANK))


def root_to_weight(a) -> tuple:
    """Simple-root coordinates to fundamental-weight coordinates (A^T a)."""
    return tuple(sum(CARTAN[i][j] * a[i] for i in range(RANK)) for j in range(RANK))


def weight_to_root(w) -> tuple:
    """Fundamental-weight coordinates to (rational) simple-root coordinates."""
    ai = cartan().A_inv
    return tuple(sum(ai[j][i] * w[i] for i in range(RANK)) for j in range(RANK))


def weight_to_root_int(w):
    """Integer root coordinates of w, or None if w is not in the root lattice."""
    c = weight_to_root(w)
    if all(x.denominator == 1 for x in c):
        return tuple(int(x) for x in c)
    return None


def simple_root(i: int) -> tuple:
    return tuple(int(j == i - 1) for j in range(RANK))


def fundamental_weight(i: int) -> tuple:
    return tuple(int(j == i - 1) for j in range(RANK))


RHO = (1,) * RANK


def height(a) -> int:
    return sum(a)


def weight_height(w) -> Fraction:
    """Height of a weight: sum of its simple-root coordinates, i.e. (w, rho)."""
    return sum(weight_to_root(w), Fraction(0))


@lru_cache(maxsize=None)
def positive_roots() -> tuple:
    """All positive roots as (root, height), sorted by height then lexicographically.

    Generated by closure from the simple roots: beta + alpha_i is a root iff
    the alpha_i-string through beta extends upward, i.e. p - q > 0 where
    p is how far the string goes down and q = (beta, alpha_i^vee).
    """
    simple = [simple_root(i) for i in range(1, RANK + 1)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i, ai in enumerate(simple):
                # length of the string below beta in direction alpha_i
                p = 0
                cand = list(beta)
                while True:
                    cand[i] -= 1
                    if tuple(cand) in found:
                        p += 1
                    else:
                        break
                q = inner_root(beta, ai)
                if p - q > 0:
                    up = tuple(b + (k == i) for k, b in enumerate(beta))
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return tuple(sorted(((r, height(r)) for r in found), key=lambda t: (t[1], tuple(-x for x in t[0]))))


def roots_by_height() -> dict:
    out: dict[int, list] = {}
    for r, h in positive_roots():
        out.setdefault(h, []).append(r)
    return out


def weyl_vector_in_roots() -> tuple:
    """rho in simple-root coordinates, computed as half the sum of positive roots."""
    tot = [0] * RANK
    for r, _ in positive_roots():
        for i in range(RANK):
            tot[i] += r[i]
    return tuple(Fraction(x, 2) for x in tot)


def is_dominant(w) -> bool:
    return all(x >= 0 for x in w)


def weyl_dimension(m) -> int:
    """Dimension of the irreducible representation with highest weight m."""
    if not is_dominant(m):
        raise ValueError(f"weight {tuple(m)} is not dominant")
    num, den = 1, 1
    for r, h in positive_roots():
        num *= h + sum(c * x for c, x in zip(r, m))
        den *= h
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def weyl_denominator() -> int:
    p = 1
    for _, h in positive_roots():
        p *= h
    return p


def dual(w) -> tuple:
    """Image under the diagram automorphism exchanging nodes 1<->6 and 3<->5."""
    return tuple(w[DUALITY[i]] for i in range(RANK))
