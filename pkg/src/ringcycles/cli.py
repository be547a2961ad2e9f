"""Command-line front end.

Exit status: 0 when every check passes, 1 when a prediction is contradicted,
2 for usage, hypothesis or capacity problems.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catmap import (
    CatMap,
    CatParams,
    cat_count_doubling_check,
    cat_minimal_poly,
    cat_table_census,
    cat_table_predict,
    companion_embedding_check,
)
from .dynamics import (
    CompanionMap,
    cycle_decomposition,
    default_budget,
    dmatrix_recursion_check,
    embedding_check,
    fixed_point_check,
    to_dot,
)
from .errors import RingCyclesError, TheoryViolationError
from .order import order_profile, verify_order_extension_equality
from .poly import format_poly, parse_poly
from .zpk import INFINITE

COMMANDS = ("analyze-poly", "analyze-cat", "enumerate", "verify-order", "verify-graph", "census", "d-matrix")
CONFIG_KEYS = {"budget", "output_dir", "threads"}


class UsageError(Exception):
    pass


def read_config(path):
    """key=value lines; blank lines and # comments ignored."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{n}: unknown key {key!r} (allowed: {', '.join(sorted(CONFIG_KEYS))})")
            out[key] = value
    return out


def build_parser():
    parser = argparse.ArgumentParser(prog="ringcycles", description="Cycle structure of linear maps over Z_{p^k}.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, required=True, help="prime")
        sp.add_argument("--k", type=int, default=1, help="precision exponent")
        sp.add_argument("--format", choices=("json", "csv", "dot", "text"), default="json")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--budget", type=float, help="state budget for enumeration")
        sp.add_argument("--threads", type=int, help="worker processes (census)")
        sp.add_argument("--config", help="key=value file with budget, output_dir, threads")
        if name in ("analyze-poly", "verify-order"):
            sp.add_argument("--poly", required=True, help='e.g. "1 - 4t + t^2" or "[1, -4, 1]"')
        if name in ("analyze-cat",):
            sp.add_argument("--a", type=int, required=True)
            sp.add_argument("--b", type=int, required=True)
        if name in ("enumerate", "verify-graph", "d-matrix"):
            sp.add_argument("--a", type=int)
            sp.add_argument("--b", type=int)
            sp.add_argument("--poly", help="companion map of this polynomial instead of a Cat map")
            sp.add_argument("--n", type=int, default=1, help="block size of the companion map")
        if name == "census":
            sp.add_argument("--method", choices=("order", "enumerate"), default="order")
        if name == "d-matrix":
            sp.add_argument("--v", type=int, default=1, help="valuation level")
            sp.add_argument("--l", type=int, default=1, help="precision steps")
    return parser


def _ks(value):
    return "INFINITE" if value == INFINITE else value


def _map_from_args(args):
    if args.poly is not None:
        if args.a is not None or args.b is not None:
            raise UsageError("give either --poly or --a/--b, not both")
        f = parse_poly(args.poly, args.p, args.k)
        return CompanionMap(f, args.n, args.k), None
    if args.a is None or args.b is None:
        raise UsageError("need --a and --b (Cat map) or --poly (companion map)")
    params = CatParams(args.a, args.b, args.p, args.k)
    return CatMap(params), params


def _checks_status(checks):
    return 0 if all(c["pass"] for c in checks) else 1


def cmd_analyze_poly(args, budget, threads):
    f = parse_poly(args.poly, args.p, args.k)
    prof = order_profile(f)
    rep = verify_order_extension_equality(f, args.k)
    report = {
        "f": format_poly(f),
        "p": args.p,
        "k": args.k,
        "splitting_degree": prof.d,
        "P1": prof.p1,
        "ks": _ks(prof.ks),
        "Pk": {str(j): prof.pk(j) for j in range(1, args.k + 1)},
        "roots": [
            {"root": list(r.root.coeffs), "multiplicity": r.multiplicity, "order": r.order, "fk": _ks(r.fk)}
            for r in prof.root_data
        ],
        "checks": [{"check": "order_oracle", "pass": rep.passed, "details": rep.as_dict()}],
    }
    return report, _checks_status(report["checks"])


def cmd_analyze_cat(args, budget, threads):
    params = CatParams(args.a, args.b, args.p, args.k)
    cm = CatMap(params)
    dec = cycle_decomposition(cm, budget=budget)
    hist = dec.histogram()
    measured = hist.period()
    theory = cm.global_period()
    checks = [{"check": "checksum", "pass": hist.checksum == cm.size, "details": {"states": cm.size}}]
    report = {
        "params": {"a": args.a, "b": args.b, "p": args.p, "k": args.k},
        "minimal_poly": format_poly(cat_minimal_poly(params)),
        "histogram": hist.as_dict(),
        "measured_period": measured,
        "Pk": theory,
    }
    try:
        pred = cat_table_predict(params)
        report["prediction"] = pred.as_dict()
        checks.append({"check": "table_period", "pass": pred.T == measured,
                       "details": {"predicted": pred.T, "measured": measured}})
    except RingCyclesError as exc:
        report["prediction"] = {"out_of_table": str(exc)}
    if theory is not None:
        checks.append({"check": "polynomial_order", "pass": theory == measured,
                       "details": {"Pk": theory, "measured": measured}})
    if args.k >= 2:
        checks.append(embedding_check(cm, budget=budget).as_dict())
    if cm.size**2 <= (budget or default_budget()):
        checks.append(companion_embedding_check(params, budget=budget).as_dict())
    report["checks"] = checks
    return report, _checks_status(checks)


def cmd_enumerate(args, budget, threads):
    lmap, _ = _map_from_args(args)
    if args.format == "dot":
        return to_dot(lmap), 0
    hist = cycle_decomposition(lmap, budget=budget).histogram()
    if args.format == "csv":
        lines = ["T,N"] + [f"{T},{N}" for T, N in hist.cycles.items()]
        return "\n".join(lines) + "\n", 0
    return hist.as_dict(), 0


def cmd_verify_order(args, budget, threads):
    f = parse_poly(args.poly, args.p, args.k)
    rep = verify_order_extension_equality(f, args.k)
    return rep.as_dict(), 0 if rep.passed else 1


def cmd_verify_graph(args, budget, threads):
    lmap, params = _map_from_args(args)
    checks = [fixed_point_check(lmap).as_dict()]
    if args.k >= 2:
        checks.append(embedding_check(lmap, budget=budget).as_dict())
    if params is not None:
        checks.append(companion_embedding_check(params, budget=budget).as_dict())
        if args.k >= 2:
            checks.append(cat_count_doubling_check(params, args.k - 1, budget=budget).as_dict())
    return {"map": lmap.name, "p": args.p, "k": args.k, "checks": checks}, _checks_status(checks)


def cmd_census(args, budget, threads):
    table = cat_table_census(args.p, args.k, method=args.method, threads=threads or 1, budget=budget)
    if args.format == "csv":
        return table.to_csv(), 0 if table.passed else 1
    return table.as_dict(), 0 if table.passed else 1


def cmd_d_matrix(args, budget, threads):
    lmap, _ = _map_from_args(args)
    rep = dmatrix_recursion_check(lmap, args.k, args.v, args.l, budget=budget)
    return {"map": lmap.name, "p": args.p, **rep.as_dict()}, 0 if rep.passed else 1


HANDLERS = {
    "analyze-poly": cmd_analyze_poly,
    "analyze-cat": cmd_analyze_cat,
    "enumerate": cmd_enumerate,
    "verify-order": cmd_verify_order,
    "verify-graph": cmd_verify_graph,
    "census": cmd_census,
    "d-matrix": cmd_d_matrix,
}


def _render(report, fmt):
    if isinstance(report, str):
        return report
    if fmt == "text":
        return "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n" for k, v in sorted(report.items()))
    if fmt in ("csv", "dot"):
        raise UsageError(f"--format {fmt} is not available for this command")
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(args):
    cfg = read_config(args.config) if args.config else {}
    budget = args.budget if args.budget is not None else cfg.get("budget")
    budget = int(float(budget)) if budget is not None else None
    if budget is not None and budget <= 0:
        raise UsageError("budget must be positive")
    threads = args.threads if args.threads is not None else int(cfg.get("threads", 1))
    if threads < 1:
        raise UsageError("threads must be positive")
    report, status = HANDLERS[args.command](args, budget, threads)
    text = _render(report, args.format)
    if args.output:
        path = args.output
        if cfg.get("output_dir") and not os.path.isabs(path):
            path = os.path.join(cfg["output_dir"], path)
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return run(args)
    except TheoryViolationError as exc:
        print(f"theory violation: {exc}", file=sys.stderr)
        return 1
    except (UsageError, RingCyclesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
