"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (or a computation
hits a pole), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import PoleError, kr
from .corpus import CorpusError
from .operator import ConsistencyError, apply, default_operator, epsilon
from .reps import character_expansion, freudenthal
from .series import check_recurrence, deformed_cg, recurrence_coefficients, verify_closed_forms
from .solver import eigen_residual, solve_iterative, solve_projection, support_violations
from .structure import (
    RHO,
    inner_weight,
    is_dominant,
    roots_by_height,
    weyl_dimension,
    weyl_vector_in_roots,
)
from .textio import (
    ParseError,
    format_label,
    format_series,
    format_zpoly,
    kappa_to_json,
    parse_label,
    parse_zpoly,
    zpoly_to_json,
)
from .weyl import dominant_weights_below, orbit

OK, FAILED = 0, 1


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def kappa_arg(text: str):
    """'symbolic' (or 'k') -> None, otherwise a rational p/q."""
    if text.strip() in ("symbolic", "k"):
        return None
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid coupling {text!r}: expected p/q or 'symbolic'") from None


def labels_from(tokens: list, count: int = 1) -> list:
    """Read ``count`` labels, each given as six integers or one compact token like 100001."""
    out, i = [], 0
    try:
        while len(out) < count:
            if i >= len(tokens):
                raise UsageError(f"expected {count} label(s)")
            tok = tokens[i]
            if (len(tok) == 6 and tok.isdigit()) or "," in tok:
                out.append(parse_label(tok))
                i += 1
            else:
                if i + 6 > len(tokens):
                    raise UsageError(f"expected six label entries, got {tokens[i:]}")
                out.append(tuple(int(t) for t in tokens[i:i + 6]))
                i += 6
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if i != len(tokens):
        raise UsageError(f"unexpected extra arguments {tokens[i:]}")
    return out


def _dominant(m):
    if any(x < 0 for x in m) or not is_dominant(m):
        raise UsageError(f"label {format_label(m)} is not dominant")
    return m


def _root_text(r) -> str:
    parts = []
    for i, c in enumerate(r, 1):
        if c:
            parts.append(f"a{i}" if c == 1 else f"{c} a{i}")
    return " + ".join(parts)


def _kappa_text(k0) -> str:
    return "symbolic" if k0 is None else str(k0)


def _emit(args, text: str, obj) -> None:
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands; each returns an exit status
# ---------------------------------------------------------------------------


def cmd_roots(args) -> int:
    table = roots_by_height()
    rho_root = weyl_vector_in_roots()
    lines = [f"{h:>2}  " + ", ".join(_root_text(r) for r in table[h]) for h in sorted(table)]
    total = sum(len(v) for v in table.values())
    lines.append(f"{total} positive roots; rho = ({', '.join(str(x) for x in rho_root)}) in the root basis; "
                 f"(rho, rho) = {inner_weight(RHO, RHO)}")
    _emit(args, "\n".join(lines), {
        "roots_by_height": {str(h): [list(r) for r in table[h]] for h in sorted(table)},
        "count": total,
        "rho_root_basis": [str(x) for x in rho_root],
        "rho_rho": str(inner_weight(RHO, RHO)),
    })
    return OK


def cmd_dim(args) -> int:
    (m,) = labels_from(args.label)
    _dominant(m)
    d = weyl_dimension(m)
    _emit(args, str(d), {"label": list(m), "dimension": d})
    return OK


def cmd_orbit(args) -> int:
    (m,) = labels_from(args.label)
    o = orbit(m)
    members = o.sorted_members()
    text = "\n".join([f"size {o.size}"] + [" ".join(str(x) for x in w) for w in members])
    _emit(args, text, {"label": list(m), "representative": list(o.representative), "size": o.size,
                       "members": [list(w) for w in members]})
    return OK


def cmd_dominant_below(args) -> int:
    (m,) = labels_from(args.label)
    _dominant(m)
    ws = dominant_weights_below(m)
    _emit(args, "\n".join(format_label(w) for w in ws), {"label": list(m), "dominant_below": [list(w) for w in ws]})
    return OK


def cmd_mult(args) -> int:
    lam, mu = labels_from(args.labels, 2)
    _dominant(lam)
    n = freudenthal(lam, mu)
    _emit(args, str(n), {"highest": list(lam), "weight": list(mu), "multiplicity": n})
    return OK


def cmd_char_expand(args) -> int:
    (lam,) = labels_from(args.label)
    _dominant(lam)
    exp = character_expansion(lam)
    sizes = exp.orbit_sizes()
    lines = [f"{exp.terms[mu]} M[{format_label(mu)}]  (orbit size {sizes[mu]})" for mu in exp.terms]
    bal = exp.dimension_balance()
    dim = weyl_dimension(lam)
    lines.append(f"sum of multiplicity * orbit size = {bal}, dim = {dim}")
    _emit(args, "\n".join(lines), {
        "highest": list(lam),
        "terms": [{"weight": list(mu), "multiplicity": exp.terms[mu], "orbit_size": sizes[mu]} for mu in exp.terms],
        "balance": bal,
        "dimension": dim,
    })
    return OK if bal == dim else FAILED


def cmd_operator(args) -> int:
    if args.what != "dump":
        raise UsageError(f"unknown operator action {args.what!r}")
    rows = default_operator().dump()
    _emit(args, "\n".join(f"{name} = {format_zpoly(p)}" for name, p in rows),
          {name: zpoly_to_json(p) for name, p in rows})
    return OK


def cmd_apply(args) -> int:
    try:
        p = parse_zpoly(args.poly)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    k = args.kappa
    out = apply(default_operator(), p) if k is None else apply(default_operator(), p, kr(k))
    _emit(args, format_zpoly(out), {"kappa": _kappa_text(k), "result": zpoly_to_json(out),
                                     "text": format_zpoly(out)})
    return OK


def cmd_solve(args) -> int:
    (m,) = labels_from(args.label)
    _dominant(m)
    k0 = args.kappa
    methods = {"iter": [solve_iterative], "proj": [solve_projection],
               "both": [solve_iterative, solve_projection]}[args.method]
    results = [f(m, k0) for f in methods]
    status = OK
    ep = results[0]
    lines = [format_zpoly(ep.poly)]
    obj = {"label": list(m), "kappa": _kappa_text(k0), "method": args.method,
           "poly": zpoly_to_json(ep.poly), "text": format_zpoly(ep.poly)}
    if len(results) == 2:
        agree = results[0].poly == results[1].poly
        lines.append(f"methods agree: {'yes' if agree else 'NO'}")
        obj["methods_agree"] = agree
        if not agree:
            status = FAILED
    if args.check:
        res = eigen_residual(ep)
        bad = support_violations(ep)
        lines.append(f"eigenvalue {epsilon(m) if k0 is None else epsilon(m, k0)}")
        lines.append(f"residual {format_zpoly(res)}")
        obj["residual"] = format_zpoly(res)
        obj["support_violations"] = [list(e) for e in bad]
        if bad:
            lines.append("support violations: " + ", ".join(format_label(e) for e in bad))
        if not res.is_zero() or bad:
            status = FAILED
    _emit(args, "\n".join(lines), obj)
    return status


def cmd_cg(args) -> int:
    tokens = list(args.labels)
    if len(tokens) == 1 and "x" in tokens[0]:
        tokens = tokens[0].replace("x", " x ").split()
    if tokens.count("x") != 1:
        raise UsageError("expected 'cg <left label> x <right label>'")
    cut = tokens.index("x")
    (left,) = labels_from(tokens[:cut])
    (right,) = labels_from(tokens[cut + 1:])
    _dominant(left)
    _dominant(right)
    s = deformed_cg(left, right, args.kappa)
    lines = [str(s)]
    obj = {"left": list(left), "right": list(right), "kappa": _kappa_text(args.kappa),
           "terms": [{"label": list(mu), "coefficient": kappa_to_json(c), "text": str(kr(c))} for mu, c in s.terms]}
    if args.kappa is None or args.kappa == 1:
        lhs, rhs = s.dimension_balance(1)
        lines.append(f"k = 1: sum n_mu dim R_mu = {lhs}, dim product = {rhs}")
        obj["dimension_balance"] = [str(lhs), str(rhs)]
    _emit(args, "\n".join(lines), obj)
    return OK


def cmd_recur(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if not 1 <= args.family <= 6:
        raise UsageError("--family must be in 1..6")
    status = OK
    lines, obj = [], {"family": args.family, "n": args.n}
    fam = recurrence_coefficients(args.family, args.n)
    lines.append(f"z1*P[{format_label(fam.label)}] = {format_series(fam.coefficients)}")
    obj["terms"] = [{"label": list(mu), "coefficient": kappa_to_json(c), "text": str(c)}
                    for mu, c in fam.coefficients]
    if args.at is not None:
        full = check_recurrence(fam, args.at)
        lines.append(f"full identity at k = {args.at}: {'holds' if full else 'FAILS'}")
        obj["full_check"] = {"kappa": str(args.at), "holds": full}
        if not full:
            status = FAILED
    if args.verify:
        report = verify_closed_forms(args.family, args.n)
        lines.append(str(report))
        obj["verify"] = {"ok": report.ok, "report": str(report).splitlines()}
        if not report.ok:
            status = FAILED
    _emit(args, "\n".join(lines), obj)
    return status


def cmd_golden(args) -> int:
    from .golden import default_jobs, run_golden

    report = run_golden(args.pattern, directory=args.dir, jobs=args.jobs or default_jobs())
    if args.json:
        print(json.dumps({"ok": report.ok, "entries": [
            {"id": r.id, "source": r.source, "ok": r.ok, "details": r.details, "paper_verbatim": r.verbatim}
            for r in report.results]}, indent=2, sort_keys=True))
    else:
        sys.stdout.write(str(report))
    return OK if report.ok else FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--kappa", type=kappa_arg, default=argparse.SUPPRESS, metavar="p/q|symbolic",
                        help="coupling (default symbolic)")

    p = argparse.ArgumentParser(prog="e6cs", parents=[common],
                                description="E6 Calogero-Sutherland eigenpolynomials with exact coefficients.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("roots", cmd_roots, "positive roots by height")
    add("dim", cmd_dim, "Weyl dimension").add_argument("label", nargs="+")
    add("orbit", cmd_orbit, "Weyl orbit of a weight").add_argument("label", nargs="+")
    add("dominant-below", cmd_dominant_below, "dominant weights below a label").add_argument("label", nargs="+")
    add("mult", cmd_mult, "weight multiplicity (highest weight, then weight)").add_argument("labels", nargs="+")
    add("char-expand", cmd_char_expand, "character in monomial functions").add_argument("label", nargs="+")
    add("operator", cmd_operator, "operator tables").add_argument("what", choices=["dump"])
    add("apply", cmd_apply, "apply the operator to a polynomial").add_argument("poly")

    sp = add("solve", cmd_solve, "eigenpolynomial P_m")
    sp.add_argument("label", nargs="+")
    sp.add_argument("--method", choices=["iter", "proj", "both"], default="iter")
    sp.add_argument("--check", action="store_true", help="print the eigen-residual and check support")

    add("cg", cmd_cg, "deformed Clebsch-Gordan series").add_argument("labels", nargs="+", metavar="label")

    sp = add("recur", cmd_recur, "recurrence coefficients of z1 P_{n lambda_j}")
    sp.add_argument("--family", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="compare with the stored closed forms for 1..n")
    sp.add_argument("--at", type=kappa_arg, metavar="p/q", help="check the full identity at this coupling")

    sp = add("golden", cmd_golden, "run the golden corpus")
    sp.add_argument("pattern", nargs="?", help="id glob, id substring or source name")
    sp.add_argument("--dir", help="corpus directory (default: the bundled one)")
    sp.add_argument("--jobs", type=int, help="worker processes")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.kappa = getattr(args, "kappa", None)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (PoleError, ConsistencyError, CorpusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
