"""Command-line front end.

Subcommands: means-eval, ineq-list, ineq-check, sweep, kyfan-check,
kyfan-sweep, oracle-compare.  JSON goes to stdout (floats round-trip), the
human summary to stderr.  Exit codes: 0 all checks hold, 1 a mathematical
violation was detected, 2 usage or hypothesis error.  The only state a
command mutates is its --out/--csv file.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog, kyfan, means, oracle
from .report import EQUALITY, HOLDS, VIOLATED, HypothesisViolation, dumps
from .rng import DEFAULT_RANGE
from .sweep import SweepConfig, default_workers, resolve_ids, run_kyfan_sweep, run_sweep

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Usage-level failure; maps to exit code 2."""


def _emit(obj):
    sys.stdout.write(dumps(obj) + "\n")


def _note(msg):
    sys.stderr.write(msg + "\n")


def _cmd_means_eval(args):
    if args.mean == "Lp" and args.p is None:
        raise CliError("--p is required when --mean Lp")
    if args.mean != "Lp" and args.p is not None:
        raise CliError("--p is only valid with --mean Lp")
    try:
        value = means.evaluate_mean(args.mean, args.a, args.b, p=args.p)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    out = {"mean_id": args.mean, "a": args.a, "b": args.b, "value": value}
    if args.p is not None:
        out["p"] = args.p
    _emit(out)
    return EXIT_OK


def _cmd_ineq_list(args):
    entries = []
    for id in catalog.INEQUALITY_IDS:
        e = catalog.REGISTRY[id]
        entries.append({"id": e.id, "arity": e.arity, "links": e.links,
                        "relaxed_quad": e.relaxed_quad,
                        "description": e.description})
    _emit({"inequalities": entries, "kyfan_ids": list(kyfan.KYFAN_IDS)})
    return EXIT_OK


def _report_exit(verdict):
    if verdict in (HOLDS, EQUALITY):
        return EXIT_OK
    return EXIT_VIOLATION


def _cmd_ineq_check(args):
    entry = catalog.REGISTRY.get(args.id)
    if entry is None:
        raise CliError(f"unknown id {args.id!r}; valid ids: "
                       f"{', '.join(catalog.INEQUALITY_IDS)}")
    inputs = {}
    for key in ("a", "b", "c", "d", "p", "q", "x", "y"):
        val = getattr(args, key)
        if val is not None:
            inputs[key] = val
    if args.n is not None:
        inputs["n"] = args.n
    _check_arity(entry, inputs)
    rep = entry.evaluate(**inputs)
    _emit(rep.to_dict())
    _note(f"{rep.id}: {rep.verdict} (margin {rep.margin:.6g})")
    return _report_exit(rep.verdict)


def _check_arity(entry, inputs):
    need = {
        "quad": ("a", "b", "c", "d"),
        "quad_pq": ("a", "b", "c", "d", "p", "q"),
        "pair": ("a", "b"),
        "seq_n": ("n",),
    }[entry.arity]
    missing = [k for k in need if k not in inputs]
    if entry.id == "EQ12" and "x" in inputs and "y" in inputs:
        missing = []
    if missing:
        raise CliError(f"{entry.id} requires flags: {', '.join('--' + k for k in need)}")


def _cmd_sweep(args):
    try:
        ids = resolve_ids([s for s in args.ids.split(",") if s])
    except KeyError as exc:
        raise CliError(str(exc)) from exc
    config = SweepConfig(ids=ids, samples=args.samples, seed=args.seed,
                         sign=args.sign, bounds=(args.range_lo, args.range_hi),
                         workers=args.workers)
    report = run_sweep(config, csv_path=args.csv)
    return _finish_sweep(report, args.out)


def _cmd_kyfan_sweep(args):
    config = SweepConfig(ids=(), samples=args.samples, seed=args.seed,
                         kyfan_n_range=(args.n_min, args.n_max),
                         workers=args.workers)
    report = run_kyfan_sweep(config, csv_path=args.csv)
    return _finish_sweep(report, args.out)


def _finish_sweep(report, out_path):
    payload = dumps(report) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
        _note(f"report written to {out_path}")
    else:
        sys.stdout.write(payload)
    for id, r in report["results"].items():
        _note(f"{id}: samples={r['samples_run']} min_margin={r['min_margin']:.6g} "
              f"equality={r['equality_cases']} violations={r['violation_count']}")
    if report["total_violations"]:
        _note(f"TOTAL VIOLATIONS: {report['total_violations']}")
        return EXIT_VIOLATION
    return EXIT_OK


def _parse_sample(text):
    """Comma-separated decimals or a JSON array."""
    import json
    text = text.strip()
    try:
        if text.startswith("["):
            values = [float(v) for v in json.loads(text)]
        else:
            values = [float(tok) for tok in text.replace(",", " ").split()]
    except (ValueError, TypeError) as exc:
        raise CliError(f"could not parse sample values: {exc}") from exc
    if not values:
        raise CliError("empty sample")
    return values


def _cmd_kyfan_check(args):
    values = _parse_sample(args.x)
    try:
        stats = kyfan.compute_stats(kyfan.KyFanSample(values))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    reports = kyfan.all_slacks(stats)
    out = {"stats": stats.as_dict(),
           "reports": {id: rep.to_dict() for id, rep in reports.items()}}
    _emit(out)
    worst = VIOLATED if any(r.verdict == VIOLATED for r in reports.values()) else HOLDS
    for id in sorted(reports):
        rep = reports[id]
        _note(f"{id}: {rep.verdict} (margin {rep.margin:.6g})")
    skipped = set(kyfan.KYFAN_IDS) - set(reports)
    if skipped:
        _note(f"skipped for constant sample: {', '.join(sorted(skipped))}")
    return EXIT_VIOLATION if worst == VIOLATED else EXIT_OK


def _cmd_oracle_compare(args):
    inputs = {}
    for key in ("a", "b", "c", "d", "x", "p"):
        val = getattr(args, key)
        if val is not None:
            inputs[key] = val
    try:
        res = oracle.oracle_eval(args.op, inputs, digits=args.digits)
        fast = _fast_path(args.op, inputs)
    except (KeyError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    rel = oracle.oracle_rel_err(fast, res)
    bound = oracle.PUBLISHED_BOUNDS[args.op]
    _emit({"op": args.op, "inputs": inputs, "fast": fast, "oracle": str(res.value),
           "digits": args.digits, "rel_err": rel, "published_bound": bound})
    _note(f"{args.op}: rel_err {rel:.3e} vs bound {bound:.0e}")
    return EXIT_OK if rel <= bound else EXIT_VIOLATION


def _fast_path(op, inputs):
    from . import ratio
    if op in ("A", "G", "H", "L", "I"):
        return means.evaluate_mean(op, inputs["a"], inputs["b"])
    if op == "Lp":
        if "p" not in inputs:
            raise CliError("--p is required for op Lp")
        return means.evaluate_mean("Lp", inputs["a"], inputs["b"], p=inputs["p"])
    for key in ("a", "b", "c", "d", "x"):
        if key not in inputs:
            raise CliError(f"--{key} is required for op {op}")
    quad = ratio.OrderedQuad(inputs["a"], inputs["b"], inputs["c"], inputs["d"])
    fn = {"f": ratio.ratio_value, "g": ratio.log_ratio_value,
          "f_prime": ratio.ratio_derivative, "g_prime": ratio.log_ratio_derivative}[op]
    return fn(quad, inputs["x"])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="meanineq",
        description="special means, power-ratio functions, and slack-valued "
                    "inequality verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("means-eval", help="evaluate one mean")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--mean", choices=means.MEAN_IDS, required=True)
    p.add_argument("--p", type=float, default=None,
                   help="exponent, required iff --mean Lp")
    p.set_defaults(fn=_cmd_means_eval)

    p = sub.add_parser("ineq-list", help="list inequality ids")
    p.set_defaults(fn=_cmd_ineq_list)

    p = sub.add_parser("ineq-check", help="evaluate one inequality")
    p.add_argument("--id", required=True)
    for key in ("a", "b", "c", "d", "p", "q", "x", "y"):
        p.add_argument(f"--{key}", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(fn=_cmd_ineq_check)

    p = sub.add_parser("sweep", help="sweep catalog ids over random samples")
    p.add_argument("--ids", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sign", choices=("any", "positive", "negative", "zero"),
                   default="any")
    p.add_argument("--range-lo", type=float, default=DEFAULT_RANGE[0])
    p.add_argument("--range-hi", type=float, default=DEFAULT_RANGE[1])
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--csv", default=None, help="per-sample CSV dump")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker threads (default ${'{'}MEANINEQ_WORKERS{'}'} or 1)")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("kyfan-check", help="evaluate EQ18..EQ31 on one sample")
    p.add_argument("--x", required=True, help="comma-separated values in (0, 1/2]")
    p.set_defaults(fn=_cmd_kyfan_check)

    p = sub.add_parser("kyfan-sweep", help="sweep EQ18..EQ31 over random samples")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(fn=_cmd_kyfan_sweep)

    p = sub.add_parser("oracle-compare", help="binary64 path vs the decimal oracle")
    p.add_argument("--op", choices=oracle.ORACLE_OP_TAGS, required=True)
    for key in ("a", "b", "c", "d", "x", "p"):
        p.add_argument(f"--{key}", type=float, default=None)
    p.add_argument("--digits", type=int, default=50)
    p.set_defaults(fn=_cmd_oracle_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except CliError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except HypothesisViolation as exc:
        _note(f"hypothesis violation: {exc}")
        return EXIT_USAGE
    except (ValueError, OverflowError, KeyError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
