"""Command-line front end.

Exit codes: 0 on success, 1 for usage or input errors, 2 when a
mathematical claim fails to hold (a failed verification or example).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import (
    BRUTE_FORCE_CAP,
    decide_by_sign,
    decision_holds,
    d_of_family,
    sweep_theorem2,
    theorem3_decide,
    verify_theorem2,
)
from .errors import GroupCoverError
from .group import format_table_text, make_group
from .scenarios import SCENARIOS, run_all, run_scenario
from .subsets import (
    SubsetFamily,
    format_subset,
    parse_subset,
    product_of,
    stabilizes_at_G,
)
from .walk import convergence_probe, uniform_on

EXIT_OK, EXIT_USAGE, EXIT_CLAIM = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Out:
    def __init__(self, args):
        self.fmt = args.format
        self.header = not args.no_header
        self.lines: list[str] = []

    def line(self, text: str = ""):
        self.lines.append(text)

    def emit_text(self):
        if self.header:
            print(f"groupcover {__version__}")
        for ln in self.lines:
            print(ln)

    def emit_json(self, payload: dict):
        if self.header:
            payload = {"tool": "groupcover", "version": __version__, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))


def _family(group, literals):
    return SubsetFamily(parse_subset(group, s) for s in literals)


def cmd_group(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    out = _Out(args)
    if out.fmt == "json":
        payload = {"name": g.name, "order": g.order, "identity": g.labels[0], "labels": list(g.labels)}
        if args.table:
            payload["table"] = g.mul_table.tolist()
        out.emit_json(payload)
        return EXIT_OK
    out.line(f"group: {g.name}")
    out.line(f"order: {g.order}")
    out.line(f"identity: {g.labels[0]}")
    out.line("elements: " + " ".join(g.labels))
    if args.table:
        out.line(format_table_text(g).rstrip("\n"))
    out.emit_text()
    return EXIT_OK


def cmd_product(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    subsets = [parse_subset(g, s) for s in args.subsets]
    p = product_of(subsets)
    out = _Out(args)
    if out.fmt == "json":
        out.emit_json({
            "group": g.name,
            "subsets": [s.labels() for s in subsets],
            "product": p.labels(),
            "size": p.cardinality,
            "is_G": p.is_full(),
        })
        return EXIT_OK
    out.line(f"group: {g.name} (order {g.order})")
    out.line("factors: " + " * ".join(format_subset(s) for s in subsets))
    out.line(f"product: {{{','.join(p.labels())}}}")
    out.line(f"size: {p.cardinality}")
    out.line(f"equals G: {'yes' if p.is_full() else 'no'}")
    out.emit_text()
    return EXIT_OK


def cmd_theorem2(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    fam = _family(g, args.subsets)
    report = verify_theorem2(fam, brute_cap=args.brute_cap)
    out = _Out(args)
    if out.fmt == "json":
        out.emit_json(report.to_dict(verbose=args.verbose))
    else:
        out.lines.extend(report.to_text(verbose=args.verbose).rstrip("\n").split("\n"))
        out.emit_text()
    return EXIT_OK if report.passed else EXIT_CLAIM


def cmd_decide(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    fam = _family(g, args.subsets)
    d = d_of_family(fam)
    by_sign = decide_by_sign(fam)
    by_pairs = theorem3_decide(fam) if len(fam) >= 2 else None
    result = {
        "group": g.name,
        "n": len(fam),
        "sizes": list(fam.sizes()),
        "d": d,
        "decide_by_sign": str(by_sign),
        "theorem3_decide": None if by_pairs is None else str(by_pairs),
    }
    status = EXIT_OK
    if args.check:
        prod = fam.product()
        comp = fam.complement_product()
        result["truth"] = {
            "product_is_G": prod.is_full(),
            "complement_product_is_G": comp.is_full(),
            "products_equal": prod == comp,
        }
        holds = {"decide_by_sign": decision_holds(fam, by_sign)}
        if by_pairs is not None:
            holds["theorem3_decide"] = decision_holds(fam, by_pairs)
        result["claims_hold"] = holds
        if not all(holds.values()):
            status = EXIT_CLAIM
    out = _Out(args)
    if out.fmt == "json":
        out.emit_json(result)
        return status
    out.line(f"family: {fam.describe()}")
    out.line(f"d(B): {d}")
    out.line(f"decide_by_sign: {by_sign}")
    if by_pairs is not None:
        out.line(f"theorem3_decide: {by_pairs}")
    if args.check:
        t = result["truth"]
        out.line(f"truth product = G: {'yes' if t['product_is_G'] else 'no'}")
        out.line(f"truth complement product = G: {'yes' if t['complement_product_is_G'] else 'no'}")
        out.line(f"truth products equal: {'yes' if t['products_equal'] else 'no'}")
        for name, ok in result["claims_hold"].items():
            out.line(f"claim {name}: {'holds' if ok else 'VIOLATED'}")
    out.emit_text()
    return status


def cmd_stabilize(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    a = parse_subset(g, args.subset)
    rep = stabilizes_at_G(a, args.max_steps)
    out = _Out(args)
    if out.fmt == "json":
        out.emit_json({"group": g.name, "subset": a.labels(), **rep.to_dict()})
        return EXIT_OK
    out.line(f"group: {g.name} (order {g.order})")
    out.line(f"A: {format_subset(a)}")
    if rep.stabilizes:
        out.line(f"stabilizes: yes, A^{rep.k} = G")
    else:
        start, period = rep.cycle
        out.line(f"stabilizes: no, A^{start + period} = A^{start} (period {period})")
    out.line("sizes: " + " ".join(map(str, rep.sizes)))
    out.emit_text()
    return EXIT_OK


def cmd_walk(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    a = parse_subset(g, args.subset)
    p = uniform_on(a, backend="float" if args.float else "exact")
    rep = convergence_probe(p, args.tol, max_n=args.max_n, max_steps=args.max_steps)
    if args.csv:
        Path(args.csv).write_text(rep.to_csv())
    out = _Out(args)
    if out.fmt == "csv":
        sys.stdout.write(rep.to_csv())
        return EXIT_OK
    if out.fmt == "json":
        out.emit_json({"group": g.name, "carrier": a.labels(), **rep.to_dict()})
        return EXIT_OK
    st = rep.stabilization
    out.line(f"group: {g.name} (order {g.order})")
    out.line(f"carrier: {format_subset(a)}")
    out.line(f"steps: {len(rep.tv_trace)}")
    out.line(f"final tv: {_fmt_tv(rep.tv_trace[-1])}")
    out.line(f"converged: {'yes at n=' + str(rep.n_at_tol) if rep.converged else 'no'} (tol {args.tol})")
    if st.stabilizes:
        out.line(f"carrier stabilizes: yes, k={st.k}")
    else:
        out.line(f"carrier stabilizes: no, cycle start {st.cycle[0]} period {st.cycle[1]}")
    out.line(f"carrier of P^(n) = A^n throughout: {'yes' if rep.carriers_match else 'no'}")
    out.emit_text()
    return EXIT_OK


def _fmt_tv(x) -> str:
    return str(x) if not isinstance(x, float) else f"{x:.12g}"


def cmd_sweep(args) -> int:
    g = make_group(args.spec, closure_cap=args.closure_cap)
    workers = args.parallel or None
    summary = sweep_theorem2(g, args.n, args.count, seed=args.seed,
                             brute_cap=args.brute_cap, workers=workers)
    out = _Out(args)
    if out.fmt == "json":
        out.emit_json({
            "group": summary.group,
            "n": summary.n,
            "families": summary.families,
            "passed": summary.passed,
            "failures": [r.to_dict() for r in summary.failures],
        })
    else:
        out.line(f"group: {summary.group}")
        out.line(f"n: {summary.n}")
        out.line(f"families: {summary.families}")
        out.line(f"passed: {summary.passed}")
        for r in summary.failures:
            out.line(f"FAIL {r.family}: {r.failure} at {r.witness_label}")
        out.emit_text()
    return EXIT_OK if summary.ok else EXIT_CLAIM


def cmd_examples(args) -> int:
    results = run_all() if args.name == "all" else [run_scenario(args.name)]
    out = _Out(args)
    ok = all(r.passed for r in results)
    if out.fmt == "json":
        out.emit_json({"passed": ok, "scenarios": [r.to_dict() for r in results]})
    else:
        for r in results:
            out.line(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.title}")
            for c in r.claims:
                out.line(f"    {'ok ' if c.ok else 'BAD'} {c.text}")
        out.line(f"{sum(r.passed for r in results)}/{len(results)} scenarios hold")
        out.emit_text()
    return EXIT_OK if ok else EXIT_CLAIM


def _add_common(p: argparse.ArgumentParser, top: bool) -> None:
    # accepted before or after the subcommand; the subcommand copy only
    # overrides when actually given
    dflt = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "json", "csv"), default=dflt("text"))
    p.add_argument("--no-header", action="store_true", default=dflt(False),
                   help="omit the version header")
    p.add_argument("--closure-cap", type=int, default=dflt(10**6),
                   help="element cap for permutation-generator closure")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, top=False)

    parser = _Parser(prog="groupcover", description="Exact subset products in finite groups.")
    parser.add_argument("--version", action="version", version=f"groupcover {__version__}")
    _add_common(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("group", cmd_group, "build and describe a group")
    p.add_argument("spec")
    p.add_argument("--table", action="store_true", help="print the Cayley table")

    p = add("product", cmd_product, "product of subsets")
    p.add_argument("spec")
    p.add_argument("subsets", nargs="+")

    p = add("theorem2", cmd_theorem2, "verify the product-counting identity")
    p.add_argument("spec")
    p.add_argument("subsets", nargs="+")
    p.add_argument("--brute-cap", type=int, default=BRUTE_FORCE_CAP)
    p.add_argument("-v", "--verbose", action="store_true", help="include per-element counts")

    p = add("decide", cmd_decide, "covering decisions for a family")
    p.add_argument("spec")
    p.add_argument("subsets", nargs="+")
    p.add_argument("--check", action="store_true", help="compare with the computed products")

    p = add("stabilize", cmd_stabilize, "does A^k reach G?")
    p.add_argument("spec")
    p.add_argument("subset")
    p.add_argument("--max-steps", type=int, default=None)

    p = add("walk", cmd_walk, "random walk with uniform step on a carrier")
    p.add_argument("spec")
    p.add_argument("subset")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-n", type=int, default=1000)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--csv", metavar="PATH", help="write the tv trace as CSV")
    p.add_argument("--float", action="store_true", help="float backend instead of exact rationals")

    p = add("sweep", cmd_sweep, "verify the counting identity on random families")
    p.add_argument("spec")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--brute-cap", type=int, default=BRUTE_FORCE_CAP)
    p.add_argument("--parallel", type=int, nargs="?", const=2, default=0, metavar="WORKERS")

    p = add("examples", cmd_examples, "run the worked examples as golden checks")
    p.add_argument("name", nargs="?", default="all", choices=["all", *SCENARIOS])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GroupCoverError as exc:
        print(f"groupcover: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, IndexError) as exc:
        print(f"groupcover: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
