"""Weyl group orbits and dominant weights below a highest weight."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .structure import (
    CARTAN,
    RANK,
    WEYL_ORDER,
    cartan,
    is_dominant,
    positive_roots,
    root_to_weight,
    weight_height,
)


def reflect(i: int, x) -> tuple:
    """Simple reflection s_i(x) = x - x_i alpha_i in weight coordinates (1-based i)."""
    if not 1 <= i <= RANK:
        raise ValueError(f"simple root index {i} out of range")
    xi = x[i - 1]
    if not xi:
        return tuple(x)
    row = CARTAN[i - 1]
    return tuple(a - xi * c for a, c in zip(x, row))


def dominant_representative(x) -> tuple:
    """The unique dominant weight in the Weyl orbit of x."""
    x = list(x)
    while True:
        for i in range(RANK):
            xi = x[i]
            if xi < 0:
                row = CARTAN[i]
                for j in range(RANK):
                    x[j] -= xi * row[j]
                break
        else:
            return tuple(x)


@dataclass(frozen=True)
class Orbit:
    representative: tuple
    members: frozenset

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list:
        """Canonical order: decreasing height (w, rho), then lexicographically decreasing."""
        return sorted(self.members, key=lambda w: (weight_height(w), w), reverse=True)


def orbit(x) -> Orbit:
    """Breadth-first closure of x under the six simple reflections."""
    x = tuple(x)
    seen = {x}
    queue = deque([x])
    while queue:
        w = queue.popleft()
        for i in range(1, RANK + 1):
            if w[i - 1]:
                v = reflect(i, w)
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return Orbit(dominant_representative(x), frozenset(seen))


@lru_cache(maxsize=4096)
def orbit_size(x) -> int:
    return orbit(dominant_representative(x)).size


@lru_cache(maxsize=None)
def _positive_root_weights():
    return tuple(root_to_weight(r) for r, _ in positive_roots())


def _sort_key(w):
    # decreasing (w, rho) first, ties broken lexicographically (descending)
    ai = cartan().A_inv
    ht = sum(ai[i][j] * w[j] for i in range(RANK) for j in range(RANK))
    return (-ht, tuple(-c for c in w))


@lru_cache(maxsize=512)
def dominant_weights_below(lam) -> tuple:
    """Dominant mu with lam - mu a non-negative integer combination of simple roots.

    Ordered by decreasing (mu, rho). Computed by descending from lam through
    dominant weights, subtracting one positive root at a time: any dominant
    mu < lam is connected to lam by such a chain.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    steps = _positive_root_weights()
    seen = {lam}
    queue = deque([lam])
    while queue:
        w = queue.popleft()
        for s in steps:
            v = tuple(a - b for a, b in zip(w, s))
            if v not in seen and min(v) >= 0:
                seen.add(v)
                queue.append(v)
    return tuple(sorted(seen, key=_sort_key))


def dominant_weights_below_bruteforce(lam) -> tuple:
    """Reference enumeration over root-coordinate boxes; for cross-checking only.

    For dominant mu the root coordinates of mu are non-negative, so those of
    lam - mu are bounded by the root coordinates of lam.
    """
    lam = tuple(lam)
    ai = cartan().A_inv
    top = [int(sum(ai[i][j] * lam[j] for j in range(RANK))) for i in range(RANK)]
    out = []
    for c in product(*(range(t + 1) for t in top)):
        w = root_to_weight(c)
        mu = tuple(a - b for a, b in zip(lam, w))
        if min(mu) >= 0:
            out.append(mu)
    return tuple(sorted(out, key=_sort_key))


def weyl_group_order() -> int:
    """|W| as the size of the regular orbit of rho."""
    n = orbit((1,) * RANK).size
    assert n == WEYL_ORDER
    return n
