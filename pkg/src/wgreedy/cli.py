"""Command-line front end.

Subcommands write JSON/CSV/SVG into ``--out`` and print a short JSON summary.
Exit codes: 0 success (or skipped premise), 1 violation, 2 usage error.
Every output embeds the invocation (minus ``--out`` and ``--workers``, which
do not affect results) so a run can be replayed.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import reports
from .constants import UnboundedWitness
from .core import SparseVector
from .experiments import SUITES, estimate_all, run_suite
from .oracles import default_universe, sigma_bar_omega, sigma_m, sigma_omega, sigma_tilde_m, sigma_tilde_omega
from .spaces import UnknownName, get_space, m3_space
from .tga import chebyshev_sum, greedy_sets, greedy_sum
from .theorems import democracy_ratio_direct
from .weights import get_weight

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

CATALOG_MATRIX = (
    ("l1", "card"),
    ("l2", "card"),
    ("linf", "card"),
    ("linf", "seq:geom:0.5"),
    ("m3", "norm:m3"),
    ("m3", "card"),
    ("summing", "card"),
)

_UNREPLAYED = ("--out", "--workers")


class UsageError(Exception):
    pass


def invocation(argv) -> list[str]:
    """``argv`` without the flags that do not influence results."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in _UNREPLAYED:
            skip = True
            continue
        if any(a.startswith(f + "=") for f in _UNREPLAYED):
            continue
        out.append(a)
    return out


def _space_weight(args):
    try:
        return get_space(args.space), get_weight(args.weight)
    except UnknownName as exc:
        raise UsageError(str(exc)) from None


# -- tga-run ---------------------------------------------------------------

def cmd_tga_run(args, meta) -> int:
    space, W = _space_weight(args)
    try:
        x = SparseVector.from_json(Path(args.input).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read vector from {args.input}: {exc}") from None
    U, exact = default_universe(space, x, (), W)
    if not 0 <= args.m <= len(U):
        raise UsageError(f"m={args.m} out of range 0..{len(U)} for this vector")
    ev = space.evaluate
    try:
        sm = sigma_m(space, x, args.m, workers=args.workers)
        stm = sigma_tilde_m(space, x, args.m, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mode = "all" if args.all_greedy_sets else "one"
    rows = []
    for sel in greedy_sets(x, args.m, mode, universe=U):
        g = greedy_sum(x, sel)
        cg = chebyshev_sum(space, x, sel.indices)
        rows.append(
            {
                "greedy_set": sel.to_json_obj(),
                "greedy_sum": g.to_json_obj(),
                "residual": ev(x - g),
                "chebyshev": cg.to_json_obj(),
                "oracles": {
                    "sigma_omega": sigma_omega(space, W, x, sel.indices, workers=args.workers).to_json_obj(),
                    "sigma_tilde_omega": sigma_tilde_omega(space, W, x, sel.indices, workers=args.workers).to_json_obj(),
                    "sigma_bar_omega": sigma_bar_omega(space, W, x, sel.indices).to_json_obj(),
                },
            }
        )
    doc = {
        **meta,
        "space": space.name,
        "weight": W.name,
        "m": args.m,
        "input": x.to_json_obj(),
        "norm": ev(x),
        "universe_exact": exact,
        "sigma_m": sm.to_json_obj(),
        "sigma_tilde_m": stm.to_json_obj(),
        "selections": rows,
    }
    path = reports.write_json(Path(args.out) / "tga_run.json", doc)
    _emit({"output": str(path), "selections": len(rows), "sigma_m": sm.value, "sigma_tilde_m": stm.value})
    return EXIT_OK


# -- constants -------------------------------------------------------------

def cmd_constants(args, meta) -> int:
    space, W = _space_weight(args)
    if args.dim < 1 or args.family_size < 1:
        raise UsageError("--dim and --family-size must be positive")
    try:
        ests = estimate_all(space, W, args.dim, args.seed, args.family_size, args.workers)
    except UnboundedWitness as exc:
        _emit({"error": str(exc), "witness": exc.witness})
        return EXIT_VIOLATION
    out = Path(args.out)
    doc = {**meta, "space": space.name, "weight": W.name, "dim": args.dim, "estimates": [e.to_json_obj() for e in ests]}
    reports.write_json(out / "constants.json", doc)
    reports.write_csv(
        out / "constants.csv",
        ["name", "lower_bound", "certified", "family", "instances"],
        [[e.name, e.lower_bound, e.certified_value, e.family, e.instances] for e in ests],
        comment=_comment(meta),
    )
    bad = [e.name for e in ests if e.certified_value is not None and e.lower_bound > e.certified_value + 1e-9]
    _emit({"output": str(out / "constants.json"), "lower_bound_exceeds_certified": bad})
    return EXIT_VIOLATION if bad else EXIT_OK


# -- check -----------------------------------------------------------------

def cmd_check(args, meta) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; suites: all, {', '.join(SUITES)}")
    if args.catalog:
        combos = CATALOG_MATRIX
    else:
        _space_weight(args)
        combos = ((args.space, args.weight),)
    out = Path(args.out)
    results = []
    for sname, wname in combos:
        space, W = get_space(sname), get_weight(wname)
        for suite in suites:
            if suite == "m3-counterexample" and (sname, wname) != combos[0]:
                continue
            rep = run_suite(suite, space, W, args.dim, args.seed, args.tol, args.family_size, args.workers)
            results.append((sname, wname, suite, rep))
            if suite == "m3-counterexample":
                _counterexample_files(out, rep, meta)
    summary = [
        {"space": s, "weight": w, "suite": n, "status": r.status, "violations": len(r.violations)}
        for s, w, n, r in results
    ]
    doc = {**meta, "summary": summary, "reports": [dict(space=s, weight=w, **r.to_json_obj()) for s, w, n, r in results]}
    name = "check_all.json" if len(results) > 1 else f"check_{suites[0]}.json"
    reports.write_json(out / name, doc)
    failed = [row for row in summary if row["status"] == "fail"]
    _emit({"output": str(out / name), "summary": summary})
    return EXIT_VIOLATION if failed else EXIT_OK


def _counterexample_files(out: Path, rep, meta):
    rows = rep.tables["ratio"]
    reports.write_csv(
        out / "m3_counterexample.csv",
        ["N", "norm_pow2", "norm_pow3", "ratio", "direct"],
        [[r["N"], r["norm_pow2"], r["norm_pow3"], r["ratio"], r["direct"]] for r in rows],
        comment=_comment(meta),
    )
    pts = [(r["N"], r["ratio"]) for r in rows]
    ref = [(r["N"], math.sqrt(r["N"]) / math.log(r["N"])) for r in rows if r["N"] > 1]
    svg = reports.svg_line_chart(
        [("r(N)", "#1f77b4", pts), ("sqrt(N)/ln(N)", "#d62728", ref)],
        title="non-democracy growth in the m3 space",
        comment=_comment(meta),
    )
    reports.write_text(out / "m3_counterexample.svg", svg)


# -- plot-democracy --------------------------------------------------------

def cmd_plot_democracy(args, meta) -> int:
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    ev = m3_space().evaluate
    rows = []
    for N in range(2, args.n_max + 1):
        P = SparseVector({2 ** k: 1.0 for k in range(1, N + 1)})
        Q = SparseVector({3 ** k: 1.0 for k in range(1, N + 1)})
        n2, n3 = ev(P), ev(Q)
        rows.append([N, n2 / n3, democracy_ratio_direct(N), math.sqrt(N) / math.log(N)])
    out = Path(args.out)
    comment = _comment(meta)
    reports.write_csv(out / "democracy.csv", ["N", "ratio", "direct", "sqrtN_over_lnN"], rows, comment=comment)
    svg = reports.svg_line_chart(
        [("r(N)", "#1f77b4", [(r[0], r[1]) for r in rows]), ("sqrt(N)/ln(N)", "#d62728", [(r[0], r[3]) for r in rows])],
        title="||1_{2..2^N}|| / ||1_{3..3^N}|| in the m3 space",
        comment=comment,
    )
    reports.write_text(out / "democracy.svg", svg)
    _emit({"output": str(out / "democracy.svg"), "rows": len(rows), "first": rows[0][1], "last": rows[-1][1]})
    return EXIT_OK


# -- plumbing --------------------------------------------------------------

def _comment(meta) -> str:
    return "invocation: " + " ".join(meta["invocation"]) + f" | seed: {meta['seed']}"


def _emit(obj):
    sys.stdout.write(reports.dumps(obj))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wgreedy", description="Weighted greedy algorithm experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, space=True):
        if space:
            sp.add_argument("--space", default="l1", help="space name, e.g. l1, l2, linf, lp:3, m3, summing")
            sp.add_argument("--weight", default="card", help="weight name, e.g. card, seq:geom:0.5, norm:m3")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", default=".", help="output directory")

    t = sub.add_parser("tga-run", help="greedy sets, greedy and Chebyshev sums, all oracle values")
    common(t)
    t.add_argument("--input", required=True, help="vector JSON file")
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--all-greedy-sets", action="store_true")

    c = sub.add_parser("constants", help="lower-bound estimates next to certified constants")
    common(c)
    c.add_argument("--dim", type=int, default=6)
    c.add_argument("--family-size", type=int, default=200)

    k = sub.add_parser("check", help="run verification suites")
    common(k)
    k.add_argument("--suite", default="all", help=f"all or one of: {', '.join(SUITES)}")
    k.add_argument("--dim", type=int, default=6)
    k.add_argument("--tol", type=float, default=1e-9)
    k.add_argument("--family-size", type=int, default=200)
    k.add_argument("--catalog", action="store_true", help="run over the built-in space/weight matrix")

    d = sub.add_parser("plot-democracy", help="r(N) table and SVG chart for the m3 space")
    common(d, space=False)
    d.add_argument("--n-max", type=int, required=True)
    return p


COMMANDS = {
    "tga-run": cmd_tga_run,
    "constants": cmd_constants,
    "check": cmd_check,
    "plot-democracy": cmd_plot_democracy,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        sys.stderr.write("error: --workers must be positive\n")
        return EXIT_USAGE
    meta = {"invocation": invocation(argv), "seed": args.seed}
    try:
        return COMMANDS[args.command](args, meta)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
