"""Command-line frontend.

Exit status: 0 success, 1 a verification check failed, 2 bad input,
3 a size cap or work budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    MultilinearPoly,
    TruthTable,
    mask_to_string,
    parse_poly,
    parse_truth_table,
    point_from_string,
    point_to_string,
    poly_from_truth_table,
    poly_to_json,
    truth_table_from_poly,
)
from .errors import BoolqError, BudgetExceeded, CapExceeded, InvalidParams, NonBooleanPolynomial, ParseError
from .families import FAMILIES, FamilySpec, make_family
from .harness import ALL_CHECKS, SweepConfig, derived_theorem4_report, run_sweep
from .maxonomial import DEFAULT_NODE_BUDGET, WordOracle, compile_decision_tree, run_algorithm_a
from .measures import DEFAULT_LIMITS, Limits, measure_report

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Function:
    """A parsed input: a truth table, a polynomial, or both."""

    def __init__(self, tt: TruthTable | None = None, poly: MultilinearPoly | None = None):
        self._tt = tt
        self._poly = poly

    @property
    def n(self):
        return self._tt.n if self._tt is not None else self._poly.n

    @property
    def tt(self) -> TruthTable:
        if self._tt is None:
            self._tt = truth_table_from_poly(self._poly)
        return self._tt

    @property
    def poly(self) -> MultilinearPoly:
        if self._poly is None:
            self._poly = poly_from_truth_table(self._tt)
        return self._poly


def _parse_text(text: str) -> _Function:
    text = text.strip()
    if text.startswith("{"):
        return _Function(poly=parse_poly(text))
    return _Function(tt=parse_truth_table(text))


def _load_input(args) -> _Function:
    sources = [s for s in ("tt", "poly", "file", "family") if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise ParseError("give exactly one input: --tt, --poly, --file or --family")
    if args.tt is not None:
        return _Function(tt=parse_truth_table(args.tt))
    if args.poly is not None:
        return _Function(poly=parse_poly(args.poly))
    if args.file is not None:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc}") from None
        return _parse_text(text)
    return _Function(tt=make_family(FamilySpec(args.family, args.n, args.k)))


def _limits(args) -> Limits:
    return Limits(
        bs_cap=args.bs_cap if args.bs_cap is not None else DEFAULT_LIMITS.bs_cap,
        dt_cap=args.dt_cap if args.dt_cap is not None else DEFAULT_LIMITS.dt_cap,
        ndeg_cap=args.ndeg_cap if args.ndeg_cap is not None else DEFAULT_LIMITS.ndeg_cap,
    )


def _emit(args, doc, human: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human)


# -- subcommands ------------------------------------------------------------

def cmd_measures(args) -> int:
    fn = _load_input(args)
    rep = measure_report(fn.tt, _limits(args), profile=args.profile)
    doc = rep.to_document()
    if rep.deg is not None and rep.d is not None:
        doc_t4 = derived_theorem4_report(rep).to_document()
    else:
        doc_t4 = None
    lines = [f"function: {fn.tt.to_text()}"]
    for key in ("deg", "bs", "bs_witness_point", "d", "ndeg", "qe_lower"):
        val = doc[key]
        lines.append(f"{key:<18}{'unavailable' if val is None else val}")
    for key, val in rep.slacks().items():
        lines.append(f"{key:<24}{'unavailable' if val is None else val}")
    if rep.bs_profile is not None:
        lines.append("bs_profile        " + " ".join(map(str, rep.bs_profile)))
    if doc_t4 is not None:
        lines.append(f"derived D <= 16*qe_lower^3: D={doc_t4['d']} bound={doc_t4['sixteen_qe_lower_cubed']} "
                     f"exact={doc_t4['exact']} consistent={doc_t4['consistent']}")
    for key, why in rep.unavailable.items():
        lines.append(f"note: {key} unavailable ({why})")
    _emit(args, doc, "\n".join(lines) + "\n")
    return EXIT_OK if not rep.unavailable else EXIT_CAP


def cmd_run(args) -> int:
    fn = _load_input(args)
    x = point_from_string(args.x, fn.n)
    value, trace = run_algorithm_a(fn.poly, WordOracle(x, fn.n), eager_check=args.check_boolean)
    doc = {
        "point": point_to_string(x, fn.n),
        "value": value,
        "rounds": len(trace.rounds),
        "total_queries": trace.total_queries,
    }
    if args.trace:
        doc["trace"] = trace.to_document()
    lines = [f"value {value}", f"rounds {len(trace.rounds)}", f"queries {trace.total_queries}"]
    if args.trace:
        for k, r in enumerate(trace.rounds, 1):
            qs = " ".join(f"x{j}={v}" for j, v in r.queries)
            lines.append(f"round {k}: maxonomial {mask_to_string(r.maxonomial, fn.n)} "
                         f"deg {r.degree_before} -> {r.degree_after}; {qs}")
    _emit(args, doc, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    mode = "exhaustive" if args.exhaustive else "random"
    kw = dict(seed=args.seed, limits=_limits(args), jobs=args.jobs)
    if mode == "random":
        kw["count"] = args.count
    if args.checks:
        kw["checks"] = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    if args.ndeg_sample is not None:
        kw["ndeg_sample"] = args.ndeg_sample
    if args.audit is not None:
        kw["audit_traces"] = args.audit
    if args.exhaustive_max_n is not None:
        kw["exhaustive_max_n"] = args.exhaustive_max_n
    cfg = SweepConfig.default(mode, args.n, **kw)
    report = run_sweep(cfg)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_table())
    if args.timings:
        sys.stderr.write(f"runtime {report.runtime_seconds:.3f}s backend {report.backend}\n")
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_family(args) -> int:
    tt = make_family(FamilySpec(args.name, args.n, args.k))
    if args.emit == "poly":
        p = poly_from_truth_table(tt)
        sys.stdout.write(poly_to_json(p) + "\n")
    else:
        sys.stdout.write(tt.to_text(hex=args.emit == "hex") + "\n")
    return EXIT_OK


def cmd_tree(args) -> int:
    fn = _load_input(args)
    tree = compile_decision_tree(fn.poly, node_budget=args.node_budget)
    if args.dot:
        try:
            Path(args.dot).write_text(tree.to_dot())
        except OSError as exc:
            raise ParseError(f"cannot write {args.dot}: {exc}") from None
    human = f"# depth {tree.depth()} leaves {tree.leaves()}\n" + tree.to_text()
    _emit(args, tree.to_document(), human)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input (exactly one)")
    g.add_argument("--tt", help='truth table, e.g. "n=2;bits=0111" or "n=2;hex=e"')
    g.add_argument("--poly", help="polynomial JSON document {n, terms:[{mask, coeff}]}")
    g.add_argument("--file", help="file holding a truth table or polynomial document")
    g.add_argument("--family", choices=FAMILIES, help="named family (with --n, or --k for address)")
    g.add_argument("--n", type=int, help="variable count for --family")
    g.add_argument("--k", type=int, help="address bits for --family address")


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bs-cap", type=int, help=f"block sensitivity cap (default {DEFAULT_LIMITS.bs_cap})")
    p.add_argument("--dt-cap", type=int, help=f"decision tree cap (default {DEFAULT_LIMITS.dt_cap})")
    p.add_argument("--ndeg-cap", type=int, help=f"ndeg cap (default {DEFAULT_LIMITS.ndeg_cap})")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "json"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolq", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="deg, bs, D, ndeg and bound slacks for one function")
    _add_input(p)
    _add_caps(p)
    _add_format(p)
    p.add_argument("--profile", action="store_true", help="include bs_x for every point")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("run", help="run the maxonomial evaluator on one input word")
    _add_input(p)
    _add_format(p)
    p.add_argument("--x", required=True, help="input word, x1 first, e.g. 101")
    p.add_argument("--trace", action="store_true", help="show every round")
    p.add_argument("--check-boolean", action="store_true", help="tabulate the polynomial first (n <= 16)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="sweep functions and check every bound")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1000, help="samples in random mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks", help=f"comma list from: {','.join(ALL_CHECKS)}")
    p.add_argument("--ndeg-sample", type=int, help="check ndeg on a seeded sample of this size")
    p.add_argument("--audit", dest="audit", action="store_true", default=None,
                   help="replay the reference evaluator on every input")
    p.add_argument("--no-audit", dest="audit", action="store_false")
    p.add_argument("--exhaustive-max-n", type=int, help="raise the exhaustive-mode size cap")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="print runtime to stderr")
    _add_caps(p)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="emit a named family")
    p.add_argument("name", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--emit", choices=("bits", "hex", "poly"), default="bits")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("tree", help="compile the evaluator's strategy into a decision tree")
    _add_input(p)
    _add_format(p)
    p.add_argument("--dot", help="also write Graphviz DOT to this path")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_tree)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"boolq: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, InvalidParams, NonBooleanPolynomial) as exc:
        print(f"boolq: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoolqError as exc:
        print(f"boolq: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
