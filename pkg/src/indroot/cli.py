"""``indroot`` command line.

Exit codes: 0 success (conjecture refutations included, they are findings),
1 a bound or lemma was violated, 2 bad input or an operational failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import survey as S
from .graph import CapacityError, FamilyId, FAMILIES, Graph, build_family
from .formats import from_edge_list, from_graph6
from .indpoly import alpha, ek_annulus, independence_polynomial, mu, xi
from .roots import RESIDUAL_TOL, RootFindingError, find_roots

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2
SUITES = ("all", "ek", "ratios", "lemmas", "lower-bounds", "wellcovered", "conjectures")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:#.15g}"
    if isinstance(x, complex):
        return f"{x.real:#.15g}{x.imag:+#.15g}j"
    return str(x)


def _clean(x):
    """JSON-ready copy: Fractions become strings, tuples become lists."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if hasattr(x, "item"):
        return _clean(x.item())
    return str(x)


# --- argument helpers -----------------------------------------------------

def parse_range(text: str) -> list[int]:
    """"5", "3..17" or "1,4,6"."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty order range {text!r}")
    return out


def parse_max_n(items: Optional[Sequence[str]]) -> dict[str, int]:
    ceilings = dict(S.DEFAULT_CEILINGS)
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--max-n expects CLASS=N, got {item!r}")
        name, value = item.split("=", 1)
        if name not in S.FAMILY_NAMES:
            raise UsageError(f"unknown class {name!r} in --max-n")
        n = int(value)
        if n < 1 or n > S.HARD_CEILINGS[name]:
            raise UsageError(f"--max-n {name} must lie in 1..{S.HARD_CEILINGS[name]}")
        ceilings[name] = n
    return ceilings


def _positive(kind):
    def conv(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=_positive(int), default=None,
                        help="worker processes (default: $INDROOT_WORKERS or 1)")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--tol-residual", type=_positive(float), default=RESIDUAL_TOL)
    common.add_argument("--tol-modulus", type=_positive(float), default=1e-6)
    common.add_argument("--max-n", action="append", metavar="CLASS=N",
                        help="override an enumeration ceiling, e.g. graphs=7")

    parser = argparse.ArgumentParser(prog="indroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="polynomial, invariants and roots of one graph")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--g6", help="graph6 string")
    src.add_argument("--edges", help="edge list text: n, then one 'u v' per line")
    src.add_argument("--edges-file", help="file holding an edge list")
    src.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--k", type=int, help="family parameter")
    p.add_argument("--no-mu", action="store_true", help="skip maximal independent set counting")

    p = sub.add_parser("survey", parents=[common], help="exhaustive maximum root modulus")
    p.add_argument("family", choices=S.FAMILY_NAMES)
    p.add_argument("orders", nargs="?", default=None, help="n, a..b, or a comma list")
    parity = p.add_mutually_exclusive_group()
    parity.add_argument("--odd", nargs="?", const="", default=None, metavar="RANGE",
                        help="odd orders only, optionally with the range")
    parity.add_argument("--even", nargs="?", const="", default=None, metavar="RANGE",
                        help="even orders only, optionally with the range")
    p.add_argument("--reproduce-tables", action="store_true",
                   help="tree table layout: n, lower bound, maxmodt, upper bound")

    p = sub.add_parser("check", parents=[common], help="run bound, lemma and conjecture checks")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--kmax", type=_positive(int), default=8)
    p.add_argument("--m", type=_positive(int), default=None, help="well-covered scan tree order cap")
    p.add_argument("--graphs", type=_positive(int), default=None, help="graph order cap")
    p.add_argument("--trees", type=_positive(int), default=None, help="tree order cap")
    p.add_argument("--forests", type=_positive(int), default=None, help="forest order cap")
    return parser


# --- poly -----------------------------------------------------------------

def _poly_inputs(args, stdin) -> list[tuple[str, Graph]]:
    if args.family:
        if args.k is None:
            raise UsageError("--family needs --k")
        return [(f"{args.family}({args.k})", build_family(FamilyId(args.family, args.k)))]
    if args.g6:
        return [(args.g6, from_graph6(args.g6))]
    if args.edges is not None:
        return [("edges", from_edge_list(args.edges.replace("\\n", "\n")))]
    if args.edges_file:
        with open(args.edges_file) as fh:
            return [(args.edges_file, from_edge_list(fh.read()))]
    lines = [ln.strip() for ln in stdin.read().splitlines() if ln.strip()]
    if not lines:
        raise UsageError("no graph given: use --g6, --edges, --family or graph6 lines on stdin")
    return [(ln, from_graph6(ln)) for ln in lines]


def poly_record(label: str, G: Graph, tol: float, with_mu: bool = True) -> dict:
    p = independence_polynomial(G)
    rec = {
        "input": label,
        "graph6": G.to_graph6(),
        "n": G.order,
        "coefficients": [str(c) for c in p.coeffs],
        "alpha": alpha(G),
        "xi": xi(G),
        "mu": mu(G) if with_mu else None,
        "annulus": None,
        "roots": [],
        "max_modulus": None,
    }
    if p.degree >= 1:
        ann = ek_annulus(p)
        rec["annulus"] = {"r": str(ann.r), "R": str(ann.R)}
        report = find_roots(p, tol=tol, certify_extreme=True)
        rec["roots"] = report.to_dict()["roots"]
        rec["max_modulus"] = report.max_modulus
        rec["bracket"] = report.to_dict()["bracket"]
    return rec


def cmd_poly(args, stdin) -> tuple[dict, int]:
    records = [poly_record(label, G, args.tol_residual, not args.no_mu) for label, G in _poly_inputs(args, stdin)]
    return {"command": "poly", "records": records}, EXIT_OK


def _poly_text(doc: dict) -> str:
    out = []
    for r in doc["records"]:
        out.append(f"graph {r['input']}  (graph6 {r['graph6']}, n={r['n']})")
        out.append("  coefficients: " + " ".join(r["coefficients"]))
        out.append(f"  alpha={r['alpha']}  xi={r['xi']}  mu={r['mu']}")
        if r["annulus"]:
            out.append(f"  EK annulus: {r['annulus']['r']} <= |z| <= {r['annulus']['R']}")
            for z in r["roots"]:
                out.append(f"  root {fmt(complex(z['re'], z['im']))}  residual {z['residual']:.3g}")
            out.append(f"  max modulus: {fmt(r['max_modulus'])}")
            if r.get("bracket"):
                out.append(f"  certified real root in [{r['bracket']['lo']}, {r['bracket']['hi']}]")
    return "\n".join(out)


# --- survey ---------------------------------------------------------------

def _orders(args, ceilings) -> list[int]:
    fam = args.family
    spec = args.orders or args.odd or args.even
    odd, even = args.odd is not None, args.even is not None
    if spec:
        orders = parse_range(spec)
    elif args.reproduce_tables:
        orders = list(range(2, 17, 2)) if even else list(range(3, 18, 2)) if odd else list(range(2, 18))
    else:
        lo = 2 if fam == "well-covered-trees" else 1
        orders = list(range(lo, ceilings[fam] + 1))
    if odd:
        orders = [n for n in orders if n % 2]
    if even:
        orders = [n for n in orders if n % 2 == 0]
    if fam == "well-covered-trees":
        orders = [n for n in orders if n % 2 == 0]
    for n in orders:
        if n < 1 or n > ceilings[fam]:
            raise S.CeilingError(f"{fam} order {n} outside 1..{ceilings[fam]}")
    return orders


def _bound_text(b) -> str:
    if b is None:
        return "-"
    exact = b.rational()
    if exact is not None:
        return str(exact) if exact.denominator == 1 else fmt(float(exact))
    return fmt(float(b))


def cmd_survey(args, ceilings) -> tuple[dict, int]:
    if args.reproduce_tables and args.family != "trees":
        raise UsageError("--reproduce-tables applies to the trees survey")
    workers = args.workers or S.default_workers()
    records = []
    violations = 0
    for n in _orders(args, ceilings):
        rec = S.maxmod_exhaustive(n, args.family, workers, ceilings[args.family])
        d = rec.to_dict()
        d["lower_text"] = _bound_text(rec.lower_bound)
        d["upper_text"] = _bound_text(rec.upper_bound)
        d["within_bounds"] = rec.within_bounds(args.tol_modulus)
        violations += not d["within_bounds"]
        records.append(d)
    doc = {"command": "survey", "family": args.family, "tables": bool(args.reproduce_tables), "records": records}
    return doc, EXIT_VIOLATION if violations else EXIT_OK


def _survey_text(doc: dict) -> str:
    recs = doc["records"]
    if doc["tables"]:
        lines = []
        for name, keep in (("odd", 1), ("even", 0)):
            rows = [r for r in recs if r["n"] % 2 == keep]
            if not rows:
                continue
            head = ("n", "2^((n-1)/2)", "maxmodt", "2^((n-1)/2)+(n-1)/2") if keep else \
                   ("n", "2^((n-6)/2)", "maxmodt", "2^((n-2)/2)+n/2")
            lines.append(" | ".join(head))
            for r in rows:
                lines.append(f"{r['n']} | {r['lower_text']} | {fmt(r['max_modulus'])} | {r['upper_text']}")
            lines.append("")
        return "\n".join(lines).rstrip()
    lines = [f"{'n':>3}  {'count':>7}  {'max modulus':>18}  {'lower':>14}  {'upper':>14}  ok  witness"]
    for r in recs:
        lines.append(f"{r['n']:>3}  {r['class_count']:>7}  {fmt(r['max_modulus']):>18}  {r['lower_text']:>14}  "
                     f"{r['upper_text']:>14}  {'y' if r['within_bounds'] else 'N'}   {r['witness']}")
    return "\n".join(lines)


# --- check ----------------------------------------------------------------

def _cap(value: Optional[int], default: int, family: str) -> int:
    n = default if value is None else value
    if n > S.HARD_CEILINGS[family]:
        raise S.CeilingError(f"{family} cap {n} exceeds {S.HARD_CEILINGS[family]}")
    return n


def run_suite(suite: str, args, ceilings) -> list[S.CheckReport]:
    workers = args.workers or S.default_workers()
    g_cap = _cap(args.graphs, ceilings["graphs"], "graphs")
    t_cap = _cap(args.trees, ceilings["trees"], "trees")
    f_cap = _cap(args.forests, ceilings["forests"], "forests")
    m_cap = args.m if args.m is not None else ceilings["well-covered-trees"] // 2
    lemma_cap = min(g_cap, 7) if args.graphs is None else g_cap
    wilf_cap = min(t_cap, 14) if args.trees is None else t_cap
    reports: list[S.CheckReport] = []
    if suite in ("all", "lower-bounds"):
        reports.append(S.check_lower_bound_families(args.kmax))
    if suite in ("all", "ratios"):
        rep = S.CheckReport("ratios")
        for n in range(1, g_cap + 1):
            rep.merge(S.check_ratio_bound_graphs(n))
        for n in range(1, f_cap + 1):
            rep.merge(S.check_ratio_bound_forests(n))
        reports.append(rep)
    if suite in ("all", "lemmas"):
        rep = S.CheckReport("lemmas")
        for n in range(1, lemma_cap + 1):
            rep.merge(S.check_alpha_vertex(n))
            rep.merge(S.check_unique_max_set(n))
        for n in range(2, f_cap + 1):
            rep.merge(S.check_top_ratio(n))
        for n in range(1, max(g_cap, wilf_cap) + 1):
            rep.merge(S.check_moon_moser_wilf(n, graphs=n <= g_cap, trees=n <= wilf_cap))
        reports.append(rep)
    if suite in ("all", "wellcovered"):
        reports.append(S.well_covered_scan(m_cap))
    if suite in ("all", "ek"):
        rep = S.CheckReport("ek")
        for fam, top in (("graphs", g_cap), ("trees", t_cap), ("forests", f_cap)):
            for n in range(1, top + 1):
                rep.merge(S.check_ek_containment(n, fam, args.tol_modulus))
        for n in range(2, 2 * m_cap + 1, 2):
            rep.merge(S.check_ek_containment(n, "well-covered-trees", args.tol_modulus))
        reports.append(rep)
    if suite in ("all", "conjectures"):
        rep = S.CheckReport("conjectures")
        for n in range(3, g_cap + 1):
            rep.merge(S.check_conjectures(n, "graphs", workers))
        for n in range(1, t_cap + 1):
            rep.merge(S.check_conjectures(n, "trees", workers))
        reports.append(rep)
    return reports


def cmd_check(args, ceilings) -> tuple[dict, int]:
    reports = run_suite(args.suite, args, ceilings)
    ok = all(r.ok for r in reports)
    refuted = [row for r in reports for row in r.rows if row.get("verdict") == S.REFUTED]
    doc = {"command": "check", "suite": args.suite, "ok": ok, "refuted": len(refuted),
           "reports": [r.to_dict() for r in reports]}
    return doc, EXIT_OK if ok else EXIT_VIOLATION


def _check_text(doc: dict) -> str:
    lines = []
    for r in doc["reports"]:
        lines.append(f"[{'PASS' if r['ok'] else 'FAIL'}] {r['name']}: {len(r['rows'])} rows, "
                     f"{len(r['violations'])} violations")
        for v in r["violations"]:
            lines.append("  VIOLATION " + json.dumps(_clean(v), sort_keys=True))
        for row in r["rows"]:
            if row.get("verdict") == S.REFUTED:
                wit = row.get("other_maximisers") or [row.get("witness")]
                lines.append(f"  REFUTED {row['conjecture']} n={row['n']} witness {' '.join(map(str, wit))}")
        for note in r["notes"]:
            if not note.startswith("REFUTED"):
                lines.append(f"  note: {note}")
    if doc["refuted"]:
        lines.append(f"REFUTED: {doc['refuted']} conjecture verdicts (findings, not failures)")
    lines.append("OK" if doc["ok"] else "VIOLATIONS FOUND")
    return "\n".join(lines)


# --- output ---------------------------------------------------------------

def _flat_rows(doc: dict) -> list[dict]:
    if doc["command"] == "check":
        return [{"report": r["name"], **{k: json.dumps(_clean(v)) if isinstance(v, (list, dict)) else v
                                         for k, v in row.items()}}
                for r in doc["reports"] for row in r["rows"] + r["violations"]]
    rows = []
    for r in doc["records"]:
        rows.append({k: json.dumps(_clean(v)) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return rows


def render(doc: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(_clean(doc), sort_keys=True, indent=2)
    if fmt_name == "csv":
        rows = _flat_rows(doc)
        keys: list[str] = []
        for row in rows:
            keys += [k for k in row if k not in keys]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: fmt(v) if isinstance(v, float) else v for k, v in row.items()})
        return buf.getvalue().rstrip("\n")
    return {"poly": _poly_text, "survey": _survey_text, "check": _check_text}[doc["command"]](doc)


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        ceilings = parse_max_n(args.max_n)
        if args.command == "poly":
            doc, code = cmd_poly(args, stdin)
        elif args.command == "survey":
            doc, code = cmd_survey(args, ceilings)
        else:
            doc, code = cmd_check(args, ceilings)
    except (UsageError, ValueError, CapacityError, RootFindingError, S.SurveyError, OSError) as exc:
        print(f"indroot: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = render(doc, args.format) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
