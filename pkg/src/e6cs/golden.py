"""Golden-corpus runner: recompute every stored transcription from first
principles and compare canonical forms.

The corpus lives in ``data/golden`` (tables, polynomial lists, series) plus
``data/recurrences.txt`` (closed forms of the recurrence coefficients).
Each entry is checked independently; the report is ordered by entry id.
"""
from __future__ import annotations

import fnmatch
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusError, Entry, data_path, entry_env, read_corpus_dir, read_corpus_file
from .operator import solve_b0_from_monomials
from .reps import monomial_to_z
from .series import (
    ClosedForm,
    deformed_cg,
    verify_closed_forms,
)
from .solver import monomial_function, solve_iterative, solve_projection
from .structure import roots_by_height
from .textio import format_label, format_zpoly, parse_label, parse_series, parse_zpoly

SOURCES = (
    "appendixB_poly",
    "appendixB_monomial",
    "appendixC_series",
    "table1",
    "section2_blist",
    "section2_Mlist",
    "section4_recurrence",
)

# n = 1..RECURRENCE_N_MAX is checked for every closed form
RECURRENCE_N_MAX = 4


@dataclass
class GoldenResult:
    id: str
    source: str
    ok: bool
    details: list = field(default_factory=list)
    verbatim: list = field(default_factory=list)

    def lines(self) -> list:
        out = [f"{'PASS' if self.ok else 'FAIL'} {self.id}"]
        out += [f"    {d}" for d in self.details]
        out += [f"    paper-verbatim: {v}" for v in self.verbatim]
        return out


@dataclass
class GoldenReport:
    results: list

    @property
    def ok(self) -> bool:
        return bool(self.results) and all(r.ok for r in self.results)

    @property
    def failed(self) -> list:
        return [r for r in self.results if not r.ok]

    def __str__(self):
        out = []
        for r in self.results:
            out += r.lines()
        out.append(f"{len(self.results)} entries, {len(self.results) - len(self.failed)} passed, "
                   f"{len(self.failed)} failed")
        return "\n".join(out) + "\n"


def _label_from_id(entry: Entry, prefix: str) -> tuple:
    name = entry.id.split(":", 1)[1]
    if not name.startswith(prefix):
        raise CorpusError(f"{entry.id}: expected an id of the form <source>:{prefix}<label>")
    return parse_label(name[len(prefix):])


def _diff(expected, got) -> list:
    return [f"expected {expected}", f"computed {got}"]


# ---------------------------------------------------------------------------
# per-source checks; each returns (ok, details)
# ---------------------------------------------------------------------------


def _check_poly(entry):
    m = _label_from_id(entry, "P_")
    want = parse_zpoly(entry.payload, entry_env(entry))
    details = []
    ok = True
    for solve in (solve_iterative, solve_projection):
        got = solve(m).poly
        if got != want:
            ok = False
            details.append(f"{solve.__name__} differs")
            details += _diff(format_zpoly(want), format_zpoly(got))
    if parse_zpoly(format_zpoly(want)) != want:
        ok = False
        details.append("canonical form does not round-trip")
    return ok, details


def _check_monomial(entry):
    m = _label_from_id(entry, "M_")
    want = parse_zpoly(entry.payload, entry_env(entry))
    details = []
    ok = True
    for name, got in (("solver at k = 0", monomial_function(m)), ("orbit sum", monomial_to_z(m))):
        if got != want:
            ok = False
            details.append(f"{name} differs")
            details += _diff(format_zpoly(want), format_zpoly(got))
    return ok, details


def _check_series(entry):
    name = entry.id.split(":", 1)[1]
    left, sep, right = name.partition("x")
    if not sep:
        raise CorpusError(f"{entry.id}: expected an id of the form C:<label>x<label>")
    want = parse_series(entry.payload, entry_env(entry))
    s = deformed_cg(parse_label(left), parse_label(right))
    got = s.as_dict()
    if got != want:
        order = sorted(set(want) | set(got), key=lambda mu: mu, reverse=True)
        details = []
        for mu in order:
            if want.get(mu) != got.get(mu):
                details.append(f"P[{format_label(mu)}]: expected {want.get(mu, 0)}, computed {got.get(mu, 0)}")
        return False, details
    lhs, rhs = s.dimension_balance(1)
    if lhs != rhs:
        return False, [f"dimension identity at k = 1 fails: {lhs} != {rhs}"]
    return True, []


_ROOT_TERM = re.compile(r"^(\d*)\s*a([1-6])$")


def parse_root(text: str) -> tuple:
    c = [0] * 6
    for part in text.split("+"):
        m = _ROOT_TERM.match(part.strip())
        if not m:
            raise CorpusError(f"bad root term {part.strip()!r}")
        c[int(m.group(2)) - 1] += int(m.group(1) or 1)
    return tuple(c)


def _check_table1(entry):
    h = int(entry.id.rsplit("=", 1)[1])
    want = [parse_root(r) for r in entry.payload.split(",")]
    got = roots_by_height().get(h, ())
    details = []
    if len(set(want)) != len(want):
        details.append("a root is listed twice")
    for r in want:
        if sum(r) != h:
            details.append(f"{r} has height {sum(r)}")
    if set(want) != set(got):
        details += _diff(sorted(want), sorted(got))
    return not details, details


def _check_mlist(entry):
    return _check_monomial(entry)


def _check_blist(entry):
    j = int(entry.id.rsplit("_", 1)[1])
    want = parse_zpoly(entry.payload, entry_env(entry))
    got = solve_b0_from_monomials()[j - 1]
    if got != want:
        return False, _diff(format_zpoly(want), format_zpoly(got))
    return True, []


_CHECKS = {
    "appendixB_poly": _check_poly,
    "appendixB_monomial": _check_monomial,
    "appendixC_series": _check_series,
    "table1": _check_table1,
    "section2_blist": _check_blist,
    "section2_Mlist": _check_mlist,
}


def _closed_form(entry) -> ClosedForm:
    _, fam, name = entry.id.split(":")
    label, sep, formula = entry.payload.partition("=")
    if not sep:
        raise CorpusError(f"{entry.id}: expected 'label = formula'")
    return ClosedForm(name, int(fam), label.strip(), formula.strip(), entry.verbatim, entry.notes)


def _check_recurrence_family(entries) -> list:
    """All closed forms of one family share one computation."""
    forms = [_closed_form(e) for e in entries]
    fam = forms[0].family
    report = verify_closed_forms(fam, RECURRENCE_N_MAX, {fam: forms})
    results = []
    for e, f in zip(entries, forms):
        mine = [x for x in report.lines if x.name == f.name]
        details = [str(x) for x in mine if not x.ok or x.found_label != x.printed_label]
        details += [f"NOTE n={n}: P[{format_label(lab)}] is printed for more than one coefficient"
                    for _, n, lab in report.duplicates
                    if any(x.printed_label == lab for x in mine if x.n == n)]
        missing = [f"computed term {c}*P[{format_label(mu)}] (n={n}) has no printed counterpart"
                   for _, n, mu, c in report.unmatched]
        details += missing
        ok = all(x.ok for x in mine) and not missing
        results.append(GoldenResult(e.id, e.source, ok, details, list(e.verbatim)))
    return results


def _run_group(group) -> list:
    """Check a list of entries; recurrence families arrive as one group."""
    if group and group[0].source == "section4_recurrence":
        return _check_recurrence_family(group)
    out = []
    for e in group:
        try:
            ok, details = _CHECKS[e.source](e)
        except CorpusError:
            raise
        except Exception as exc:  # a crash is a failed entry, not a crashed run
            ok, details = False, [f"{type(exc).__name__}: {exc}"]
        out.append(GoldenResult(e.id, e.source, ok, details, list(e.verbatim)))
    return out


# ---------------------------------------------------------------------------
# corpus loading and the runner
# ---------------------------------------------------------------------------


def load_corpus(directory=None, recurrences=None) -> list:
    """All golden entries, validated for known sources and unique ids."""
    entries = read_corpus_dir(directory or data_path("golden"))
    rec = data_path("recurrences.txt") if recurrences is None else recurrences
    if rec:
        entries += read_corpus_file(rec)
    seen = set()
    for e in entries:
        if e.source not in SOURCES:
            raise CorpusError(f"{e.path}:{e.line}: unknown source {e.source!r} for {e.id}")
        if e.id in seen:
            raise CorpusError(f"duplicate entry id {e.id!r}")
        seen.add(e.id)
    return entries


def _matches(entry: Entry, pattern: str | None) -> bool:
    """Glob on the id or the source name; a plain string matches a substring of either."""
    if not pattern:
        return True
    if any(ch in pattern for ch in "*?["):
        return fnmatch.fnmatchcase(entry.id, pattern) or fnmatch.fnmatchcase(entry.source, pattern)
    return pattern in entry.id or pattern == entry.source


def _groups(entries) -> list:
    groups, families = [], {}
    for e in entries:
        if e.source == "section4_recurrence":
            fam = e.id.split(":")[1]
            if fam not in families:
                families[fam] = []
                groups.append(families[fam])
            families[fam].append(e)
        else:
            groups.append([e])
    return groups


def default_jobs() -> int:
    return max(1, min(8, os.cpu_count() or 1))


def run_golden(pattern: str | None = None, *, directory=None, recurrences=None,
               jobs: int = 1) -> GoldenReport:
    """Check every entry selected by ``pattern`` (see :func:`_matches`).

    Raises CorpusError for a missing, empty or corrupt corpus and when the
    pattern selects nothing.
    """
    corpus = load_corpus(directory, recurrences)
    selected = {e.id for e in corpus if _matches(e, pattern)}
    if not selected:
        raise CorpusError(f"no golden entries match {pattern!r}")
    # a recurrence family is always checked whole: its printed terms are
    # matched against the computed expansion together
    families = {e.id.split(":")[1] for e in corpus
                if e.source == "section4_recurrence" and e.id in selected}
    entries = [e for e in corpus if e.id in selected
               or (e.source == "section4_recurrence" and e.id.split(":")[1] in families)]
    groups = _groups(entries)
    if jobs > 1 and len(groups) > 1:
        # heavy groups first so the pool stays busy
        groups.sort(key=lambda g: -len(g) if g[0].source == "section4_recurrence" else 0)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_group, groups))
    else:
        chunks = [_run_group(g) for g in groups]
    results = sorted((r for c in chunks for r in c if r.id in selected), key=lambda r: r.id)
    return GoldenReport(results)


def corpus_files(directory=None) -> list:
    d = Path(directory or data_path("golden"))
    return sorted(d.glob("*.txt"))
