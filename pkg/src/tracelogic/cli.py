"""``tracelogic`` command-line interface.

Exit status of ``check``: 0 when every formula holds, 1 when some formula
fails, 2 on any error (bad arguments, unreadable trace, parse error, type
error during evaluation).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import classic, rewrite, traffic
from .errors import TraceLogicError
from .parser import ParseError, parse_formula, print_formula
from .semantics import Evaluator, check
from .traceio import dump_records, load_trace
from .trace import LassoTrace

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


def _csv_list(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def _int_list(text):
    try:
        return [int(x) for x in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tracelogic",
                                 description="Temporal logic over finite and lasso traces.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate formulas on a trace")
    c.add_argument("--trace", required=True, help="trace file")
    c.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    c.add_argument("--lasso-start", type=_nonneg, default=None,
                   help="index of the first record of the repeating cycle")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula", action="append", help="formula text (repeatable)")
    g.add_argument("--formula-file", help="file with one formula per line")
    c.add_argument("--output", choices=("text", "json"), default="text")
    c.add_argument("--explain", action="store_true", help="report witnesses and details")
    c.add_argument("--nat-vars", type=_csv_list, default=[],
                   help="comma-separated variables holding natural numbers")
    c.add_argument("--verbose", action="store_true", help="include timing information")

    n = sub.add_parser("normalize", help="print a rewritten formula")
    n.add_argument("--formula", required=True)
    mode = n.add_mutually_exclusive_group()
    mode.add_argument("--nnf", action="store_const", dest="mode", const="nnf")
    mode.add_argument("--expand", action="store_const", dest="mode", const="expand")
    mode.add_argument("--simplify", action="store_const", dest="mode", const="simplify")
    mode.add_argument("--push-next", action="store_const", dest="mode", const="push-next")

    e = sub.add_parser("embed", help="translate a classic LTL/LTLf formula")
    e.add_argument("--logic", choices=("ltl", "ltlf"), required=True)
    e.add_argument("--formula", required=True)

    x = sub.add_parser("examples", help="bundled example generators")
    xs = x.add_subparsers(dest="example", required=True)
    t = xs.add_parser("traffic", help="two traffic lights at an intersection")
    t.add_argument("--steps", type=int, required=True)
    t.add_argument("--max-arrives", type=int, required=True)
    t.add_argument("--max-departs", type=int, required=True)
    t.add_argument("--schedule", type=_int_list, default=None,
                   help="periodic arrival counts, e.g. 1,0,1 (default: max-arrives every step)")
    t.add_argument("--lasso", action="store_true",
                   help="emit prefix plus one cycle instead of --steps records")
    t.add_argument("--out", help="write records here instead of stdout")
    return ap


def _read_formulas(args):
    if args.formula is not None:
        return args.formula
    with open(args.formula_file, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    return [ln for ln in lines if ln and not ln.startswith("#")]


def _trace_info(t):
    if isinstance(t, LassoTrace):
        return {"length": "infinite", "kind": "lasso",
                "prefix": len(t.prefix), "cycle": len(t.cycle)}
    return {"length": t.length, "kind": "finite"}


def _report(text, verdict, trace, explain):
    rep = {"holds": verdict.holds}
    if explain and verdict.witness is not None:
        rep["witness"] = verdict.witness
    rep["formula"] = text
    rep["trace"] = _trace_info(trace)
    rep["detail"] = verdict.detail
    return rep


def _parse_error_text(text, e: ParseError):
    raw = text.encode("utf-8")
    col = len(raw[: e.span.start].decode("utf-8", errors="replace"))
    return f"parse error: {e}\n  {text}\n  {' ' * col}^"


def cmd_check(args, out, err) -> int:
    trace = load_trace(args.trace, args.format, args.lasso_start)
    texts = _read_formulas(args)
    if not texts:
        err.write("error: no formulas given\n")
        return EXIT_ERROR
    formulas = []
    for text in texts:
        try:
            f = parse_formula(text)
        except ParseError as e:
            err.write(_parse_error_text(text, e) + "\n")
            return EXIT_ERROR
        if args.nat_vars:
            f = rewrite.naturalize_formula(f, args.nat_vars)
        formulas.append(f)
    if args.nat_vars:
        _check_nat_values(trace, args.nat_vars)

    ev = Evaluator(trace)
    t0 = time.perf_counter()
    # the evaluator is pure; results come back in input order
    with ThreadPoolExecutor(max_workers=min(4, len(formulas))) as pool:
        verdicts = list(pool.map(lambda f: check(trace, f, ev), formulas))
    elapsed = time.perf_counter() - t0

    reports = [_report(t, v, trace, args.explain) for t, v in zip(texts, verdicts)]
    if args.verbose:
        for r in reports:
            r["elapsed_ms"] = round(elapsed * 1000, 3)
    if args.output == "json":
        for r in reports:
            out.write(json.dumps(r, sort_keys=False) + "\n")
    else:
        for r, v in zip(reports, verdicts):
            out.write(f"{'HOLDS' if v.holds else 'FAILS'}: {r['formula']}\n")
            if args.explain:
                if v.witness is not None:
                    out.write(f"  witness: step {v.witness}\n")
                out.write(f"  {v.detail}\n")
    return EXIT_HOLDS if all(v.holds for v in verdicts) else EXIT_FAILS


def _check_nat_values(trace, names):
    states = list(trace.prefix) + list(trace.cycle) if isinstance(trace, LassoTrace) \
        else list(trace.states)
    for i, s in enumerate(states):
        for n in names:
            if n in s:
                v = s[n]
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise TraceLogicError(
                        f"record {i}: {n} is declared natural but holds {v!r}")


def cmd_normalize(args, out, err) -> int:
    f = parse_formula(args.formula)
    mode = args.mode or "all"
    if mode == "nnf":
        g = rewrite.to_nnf(f)
    elif mode == "expand":
        g = rewrite.expand_derived(f)
    elif mode == "simplify":
        g = rewrite.simplify(f)
    elif mode == "push-next":
        g = rewrite.push_next(f)
    else:
        g = rewrite.normalize_pipeline(f)
    out.write(print_formula(g) + "\n")
    return 0


def cmd_embed(args, out, err) -> int:
    f = parse_formula(args.formula)
    if args.logic == "ltl":
        g = classic.ltl_to_core(classic.ltl_from_core(f))
    else:
        g = classic.ltlf_to_core(classic.ltlf_from_core(f))
    out.write(print_formula(g) + "\n")
    return 0


def cmd_traffic(args, out, err) -> int:
    schedule = args.schedule if args.schedule is not None else [args.max_arrives]
    run = traffic.generate_traffic_trace(args.steps, args.max_arrives, args.max_departs,
                                         schedule)
    records = run.lasso_records() if args.lasso else run.records
    text = dump_records(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if run.periodic:
        err.write(f"# lasso-start {run.lasso_start} period {run.period}\n")
    else:
        err.write("# no period detected; queues keep growing\n")
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else 0
    handlers = {"check": cmd_check, "normalize": cmd_normalize, "embed": cmd_embed}
    try:
        if args.command == "examples":
            return cmd_traffic(args, out, err)
        return handlers[args.command](args, out, err)
    except ParseError as e:
        text = getattr(args, "formula", "") or ""
        if isinstance(text, list):
            text = text[0]
        err.write(_parse_error_text(e.text or text, e) + "\n")
        return EXIT_ERROR
    except (TraceLogicError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
