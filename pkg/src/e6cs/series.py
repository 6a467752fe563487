"""Deformed Clebsch-Gordan series P_a P_b = sum_mu n_mu(k) P_mu and the
recurrences z1 P_{n lambda_j} = sum_mu c_mu(k) P_mu.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import ZPoly, kr
from .corpus import data_path, read_corpus_file
from .operator import ConsistencyError
from .solver import jacobi, solve_iterative
from .structure import RANK, RHO, dual, fundamental_weight, inner_weight, is_dominant, weyl_dimension
from .textio import format_label, format_series, parse_kappa
from .weyl import dominant_weights_below


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _height(w) -> Fraction:
    return inner_weight(w, RHO)


@dataclass(frozen=True)
class DeformedCGSeries:
    left: tuple
    right: tuple
    terms: tuple  # ((mu, coefficient), ...) by decreasing height, leading term first
    kappa: Fraction | None = None

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, mu):
        return self.as_dict().get(tuple(mu), kr(0))

    def __str__(self):
        return format_series(self.terms)

    def at(self, k0) -> dict:
        return {mu: c(k0) for mu, c in self.terms}

    def dimension_balance(self, k0=1) -> tuple:
        """(sum n_mu(k0) dim R_mu, dim R_left * dim R_right)."""
        lhs = sum(c(k0) * weyl_dimension(mu) for mu, c in self.terms)
        return lhs, weyl_dimension(self.left) * weyl_dimension(self.right)

    def dual(self) -> DeformedCGSeries:
        return DeformedCGSeries(dual(self.left), dual(self.right),
                                tuple((dual(mu), c) for mu, c in self.terms), self.kappa)


@lru_cache(maxsize=512)
def _eigen_fixed(m, k0):
    return solve_iterative(m, k0).poly


def _eigen(m, kappa):
    if kappa is None:
        return jacobi(m)
    return _eigen_fixed(tuple(m), Fraction(kappa))


def _peel(product: ZPoly, top, eigen, candidates, depth=None) -> tuple:
    """Subtract multiples of P_mu from ``product`` highest first.

    ``eigen(mu, depth)`` returns P_mu, truncated to ``depth`` below mu when
    depth is not None. Returns the coefficient list and the residual.
    """
    h_top = _height(top)
    residual = dict(product.terms)
    terms = []
    for mu in candidates:
        c = residual.get(mu)
        if c is None or not c:
            continue
        d = None if depth is None else depth - (h_top - _height(mu))
        p = eigen(mu, d)
        for e, v in p.terms.items():
            if depth is not None and h_top - _height(e) > depth:
                continue
            s = residual.get(e)
            s = -(c * v) if s is None else s - c * v
            if s:
                residual[e] = s
            else:
                residual.pop(e, None)
        terms.append((mu, c))
    return terms, ZPoly._raw(residual)


def deformed_cg(left, right, kappa=None) -> DeformedCGSeries:
    """Expand P_left * P_right in eigenpolynomials (symbolic unless kappa is given)."""
    left, right = tuple(left), tuple(right)
    for m in (left, right):
        if not is_dominant(m):
            raise ValueError(f"label {m} is not dominant")
    k0 = None if kappa is None else Fraction(kappa)
    top = _add(left, right)
    product = _eigen(left, k0) * _eigen(right, k0)
    terms, residual = _peel(product, top, lambda mu, d: _eigen(mu, k0), dominant_weights_below(top))
    if not residual.is_zero():
        raise ConsistencyError(f"P_{left} P_{right}: nonzero residual {residual}")
    return DeformedCGSeries(left, right, tuple(terms), k0)


# ---------------------------------------------------------------------------
# recurrences z1 P_{n lambda_j}
# ---------------------------------------------------------------------------

# every weight w of R_lambda1 has (lambda1 - w, rho) <= 16, so the labels
# m + w all lie within this depth of the top label m + lambda1
WINDOW = 16


@dataclass(frozen=True)
class RecurrenceFamily:
    family: int  # j in z1 P_{n lambda_j}
    n: int
    coefficients: tuple  # ((label, coefficient), ...), leading term first
    window: int | None = WINDOW

    @property
    def label(self) -> tuple:
        return tuple(self.n * x for x in fundamental_weight(self.family))

    def as_dict(self) -> dict:
        return dict(self.coefficients)

    def __str__(self):
        return format_series(self.coefficients)


def _truncated(m, depth):
    return solve_iterative(m, max_height=depth).poly


def recurrence_coefficients(j: int, n: int, *, window: int = WINDOW) -> RecurrenceFamily:
    """Coefficients of z1 P_{n lambda_j}, exact in k.

    Everything is computed to ``window`` levels below the top label; every
    coefficient in that range is exact and the residual there must vanish.
    Use :func:`check_recurrence` for a full-depth confirmation at a fixed k.
    """
    if not 1 <= j <= RANK:
        raise ValueError(f"family {j} out of range 1..{RANK}")
    if n < 1:
        raise ValueError("n must be positive")
    m = tuple(n * x for x in fundamental_weight(j))
    top = _add(m, fundamental_weight(1))
    h_top = _height(top)
    product = ZPoly.var(1) * _truncated(m, window)
    candidates = [mu for mu in dominant_weights_below(top) if h_top - _height(mu) <= window]
    terms, residual = _peel(product, top, _truncated, candidates, window)
    if not residual.is_zero():
        raise ConsistencyError(f"z1 P_{m}: residual within the window is {residual}")
    return RecurrenceFamily(j, n, tuple(terms), window)


def check_recurrence(fam: RecurrenceFamily, k0) -> bool:
    """Full identity z1 P_m = sum c_mu P_mu at the rational coupling k0."""
    k0 = Fraction(k0)
    lhs = ZPoly.var(1) * solve_iterative(fam.label, k0).poly
    rhs = ZPoly()
    for mu, c in fam.coefficients:
        rhs = rhs + solve_iterative(mu, k0).poly.scale(c(k0))
    return lhs == rhs


# ---------------------------------------------------------------------------
# printed closed forms
# ---------------------------------------------------------------------------

_SLOT = re.compile(r"\(([^()]*)\)|(\d)|(n)")


def expand_label(template: str, n: int) -> tuple:
    """'0(n-1)0010' at n=3 -> (0, 2, 0, 0, 1, 0)."""
    out = []
    pos = 0
    template = template.replace(" ", "")
    while pos < len(template):
        m = _SLOT.match(template, pos)
        if not m:
            raise ValueError(f"bad label template {template!r}")
        if m.group(1) is not None:
            v = parse_kappa(m.group(1), {"n": n})
            if not v.is_constant() or v.constant_value().denominator != 1:
                raise ValueError(f"label entry {m.group(1)!r} is not an integer")
            out.append(int(v.constant_value()))
        elif m.group(2) is not None:
            out.append(int(m.group(2)))
        else:
            out.append(n)
        pos = m.end()
    if len(out) != RANK:
        raise ValueError(f"label template {template!r} has {len(out)} entries")
    return tuple(out)


@dataclass
class ClosedForm:
    name: str
    family: int
    label: str  # template in n
    formula: str
    verbatim: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def value(self, n: int):
        return parse_kappa(self.formula, {"n": n})


def load_closed_forms(path=None) -> dict:
    """family -> list of ClosedForm, in printed order."""
    out: dict = {}
    for e in read_corpus_file(path or data_path("recurrences.txt")):
        _, fam, name = e.id.split(":")
        label, sep, formula = e.payload.partition("=")
        if not sep:
            raise ValueError(f"{e.id}: expected 'label = formula'")
        out.setdefault(int(fam), []).append(
            ClosedForm(name, int(fam), label.strip(), formula.strip(), e.verbatim, e.notes))
    return out


@dataclass
class CheckLine:
    family: int
    n: int
    name: str
    printed_label: tuple
    found_label: tuple | None
    printed: object
    computed: object
    ok: bool

    def __str__(self):
        tag = "PASS" if self.ok else "FAIL"
        lab = format_label(self.printed_label)
        s = f"{tag} z1*P[{format_label(self.label_of_family())}] {self.name}(n={self.n}) P[{lab}]"
        if self.found_label is not None and self.found_label != self.printed_label:
            s += f" -> coefficient found at P[{format_label(self.found_label)}]"
        if not self.ok:
            s += f": printed {self.printed}, computed {self.computed}"
        return s

    def label_of_family(self):
        return tuple(self.n * x for x in fundamental_weight(self.family))


@dataclass
class ClosedFormReport:
    lines: list
    unmatched: list  # (family, n, label, coefficient) computed but not printed
    duplicates: list  # (family, n, label) printed more than once

    @property
    def ok(self) -> bool:
        return all(x.ok for x in self.lines) and not self.unmatched

    def __str__(self):
        out = [str(x) for x in self.lines]
        for fam, n, lab in self.duplicates:
            out.append(f"NOTE family {fam} n={n}: label P[{format_label(lab)}] is printed twice")
        for fam, n, lab, c in self.unmatched:
            out.append(f"FAIL family {fam} n={n}: computed term {c}*P[{format_label(lab)}] has no printed counterpart")
        return "\n".join(out)


def verify_closed_forms(j: int, n_max: int, forms: dict | None = None) -> ClosedFormReport:
    """Compare computed recurrence coefficients with the printed closed forms.

    A printed coefficient is matched to its printed label first; if the value
    sits at a different label (or the label is printed twice) the label
    carrying that value is reported.
    """
    forms = forms if forms is not None else load_closed_forms()
    lines, unmatched, dups = [], [], []
    for n in range(1, n_max + 1):
        fam = recurrence_coefficients(j, n)
        computed = fam.as_dict()
        lead = _add(fam.label, fundamental_weight(1))
        used = {lead} if computed.get(lead) == 1 else set()
        seen: dict = {}
        printed = [(f, expand_label(f.label, n)) for f in forms.get(j, [])]
        for _, lab in printed:
            seen[lab] = seen.get(lab, 0) + 1
        dups.extend((j, n, lab) for lab, c in seen.items() if c > 1)
        for f, lab in printed:
            want = f.value(n)
            got = computed.get(lab)
            found = lab if got == want and lab not in used else None
            if found is None:
                found = next((mu for mu, c in computed.items() if c == want and mu not in used), None)
            if found is not None:
                used.add(found)
            lines.append(CheckLine(j, n, f.name, lab, found, want, got if found is None else computed[found],
                                   found is not None))
        for mu, c in fam.coefficients:
            if mu not in used:
                unmatched.append((j, n, mu, c))
    return ClosedFormReport(lines, unmatched, dups)
