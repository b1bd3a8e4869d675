"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 input-format error, 4 oracle budget
exceeded. Every artifact carries a run manifest: JSON outputs embed it, edge
lists hold it in a comment line, CSV files get a ``.manifest.json`` sidecar.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .attack import (
    Strategy,
    greedy_edge_removal,
    greedy_until_lcc,
    random_removal_trajectory,
    write_trajectory_csv,
)
from .closed_form import ClosedFormFamily, FragilityQuery, as_fraction, f_comp, fragility_exact
from .errors import BudgetExceededError, FragilityError, GraphError, InputFormatError
from .estimator import batch_estimate, estimate_fragility, rational_json, summarize
from .generators import GeneratorConfig, gen_proximity, generate, load_scene
from .graph import format_edgelist, read_edgelist
from .metrics import HELLINGER_CONVENTION, average_trajectories, divergence_trajectory, write_divergence_csv
from .oracle import brute_r_star, golden_rows, write_golden

EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 2, 3, 4
SWEEP_STRATEGIES = ("greedy_only_min_degree", "greedy_only_betweenness", "pipeline")


class UsageError(FragilityError):
    pass


def _timestamp(args) -> str:
    if args.timestamp:
        return args.timestamp
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = _dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc) if epoch else _dt.datetime.now(_dt.timezone.utc)
    return when.replace(microsecond=0).isoformat()


def _manifest(args, inputs=(), outputs=()) -> dict:
    skip = {"func", "timestamp", "command"}
    params = {
        k: str(v) if isinstance(v, Fraction) else v for k, v in sorted(vars(args).items()) if k not in skip
    }
    return {
        "subcommand": args.command,
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "tool_version": __version__,
        "timestamp": _timestamp(args),
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit_json(obj, out) -> None:
    if out:
        Path(out).write_text(_dump(obj))
    else:
        sys.stdout.write(_dump(obj))


def _sidecar(path, manifest) -> None:
    Path(str(path) + ".manifest.json").write_text(_dump(manifest))


def _rational(x) -> dict:
    return rational_json(Fraction(x))


def _generator_config(args, seed) -> GeneratorConfig:
    return GeneratorConfig(
        family=args.family,
        n=args.n,
        p=args.p,
        m_ba=args.m_ba,
        k=args.k,
        p_ws=args.p_ws,
        target_edge_count=args.trim,
        seed=seed,
    )


def _load_graph(path):
    try:
        return read_edgelist(path)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc


def _no_timing(report):
    report.stage_ms = {k: 0.0 for k in report.stage_ms}
    return report


# -- subcommands ------------------------------------------------------------


def cmd_generate(args) -> int:
    g = generate(_generator_config(args, args.seed))
    manifest = _manifest(args, outputs=[args.out] if args.out else [])
    text = format_edgelist(g, [f"manifest: {json.dumps(manifest, sort_keys=True)}"])
    summary = {"n": g.n, "m": g.m}
    if args.out:
        Path(args.out).write_text(text)
        sys.stdout.write(_dump(summary))
    else:
        sys.stdout.write(text)
        sys.stderr.write(f"n={g.n} m={g.m}\n")
    return 0


def cmd_exact(args) -> int:
    fam = ClosedFormFamily(args.family, args.n)
    q = FragilityQuery.resolve(args.n, args.delta)
    fragility = fragility_exact(args.family, args.n, args.delta)
    r_star = fam.r_star(q.c)
    result = {
        "family": args.family,
        "n": args.n,
        "delta": _rational(q.delta),
        "c": q.c,
        "m": fam.m,
        "r_star": r_star,
        "f": _rational(Fraction(r_star, fam.m)),
        "f_comp": _rational(f_comp(args.n, q.c)),
        "fragility": _rational(fragility),
        "manifest": _manifest(args),
    }
    _emit_json(result, args.out)
    return 0


def cmd_oracle(args) -> int:
    if args.golden:
        rows = golden_rows(args.families.split(","), args.max_n)
        write_golden(args.golden, rows)
        _sidecar(args.golden, _manifest(args, outputs=[args.golden]))
        sys.stdout.write(_dump({"rows": len(rows), "out": args.golden}))
        return 0
    if args.graph:
        g = _load_graph(args.graph)
        inputs = [args.graph]
    elif args.family:
        if args.n is None:
            raise UsageError("--n is required with --family")
        g = generate(GeneratorConfig(args.family, args.n))
        inputs = []
    else:
        raise UsageError("oracle needs --graph, --family or --golden")
    if args.c is None and args.delta is None:
        raise UsageError("oracle needs --c or --delta")
    c = args.c if args.c is not None else FragilityQuery.resolve(g.n, args.delta).c
    r = brute_r_star(g, c)
    result = {"n": g.n, "m": g.m, "c": c, "r_star": r, "f": _rational(Fraction(r, g.m)) if g.m else None}
    result["manifest"] = _manifest(args, inputs=inputs)
    _emit_json(result, args.out)
    return 0


def cmd_attack(args) -> int:
    g = _load_graph(args.graph)
    if args.strategy == "random":
        records = random_removal_trajectory(g, args.seed)
    else:
        strategy = Strategy(args.strategy)
        if args.c is not None or args.delta is not None:
            c = args.c if args.c is not None else FragilityQuery.resolve(g.n, args.delta).c
            records = greedy_until_lcc(g, c, strategy).trajectory
        else:
            records = greedy_edge_removal(g, g.m if args.r is None else args.r, strategy).trajectory
    write_trajectory_csv(g, records, args.out)
    _sidecar(args.out, _manifest(args, inputs=[args.graph], outputs=[args.out]))
    final = records[-1].lcc_size if records else None
    sys.stdout.write(_dump({"removed": len(records), "final_lcc": final, "out": args.out}))
    return 0


def cmd_estimate(args) -> int:
    trials = args.trials
    if args.graph:
        g = _load_graph(args.graph)
        graph_id = Path(args.graph).stem
        reports = []
        for i in range(trials):
            rep = estimate_fragility(g, args.delta, args.seed + i, graph_id=graph_id)
            if args.trajectory_dir:
                _write_stage_trajectories(g, rep, Path(args.trajectory_dir), args)
            reports.append(rep)
        inputs = [args.graph]
    elif args.family:
        cfg = _generator_config(args, args.seed)
        batch = batch_estimate(cfg, args.delta, trials, args.seed, jobs=args.jobs)
        reports = batch.per_trial
        inputs = []
    else:
        raise UsageError("estimate needs --graph or --family")
    if args.no_timing:
        reports = [_no_timing(r) for r in reports]
    if trials == 1:
        result = reports[0].to_json()
    else:
        result = summarize(reports, reports[0].delta).to_json()
    result["manifest"] = _manifest(args, inputs=inputs, outputs=[args.out] if args.out else [])
    _emit_json(result, args.out)
    return 0


def _write_stage_trajectories(g, report, outdir: Path, args) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, branch in report.branches.items():
        path = outdir / f"greedy_{name}_seed{report.seed}.csv"
        write_trajectory_csv(g, branch.state.trajectory, path)
        _sidecar(path, _manifest(args, outputs=[path]))


def cmd_sweep(args) -> int:
    deltas = [d for d in (args.deltas or "").split(",") if d.strip()]
    if not deltas:
        raise UsageError("sweep needs a non-empty --deltas list")
    strategies = args.strategies.split(",")
    unknown = set(strategies) - set(SWEEP_STRATEGIES)
    if unknown:
        raise UsageError(f"unknown sweep strategies {sorted(unknown)}; choose from {SWEEP_STRATEGIES}")
    g = _load_graph(args.graph)
    rows = []
    for d in deltas:
        rep = estimate_fragility(g, as_fraction(d), args.seed)
        for strategy in strategies:
            if strategy == "pipeline":
                r, value = rep.r_final, rep.fragility_hat
            else:
                branch = "min_degree" if strategy.endswith("min_degree") else "edge_betweenness"
                r, value = rep.branches[branch].r_greedy, rep.greedy_fragility(branch)
            rows.append((str(rep.delta), strategy, rep.c, r, repr(float(value))))
    lines = ["delta,strategy,c,r,fragility_hat"] + [",".join(map(str, row)) for row in rows]
    Path(args.out).write_text("\n".join(lines) + "\n")
    _sidecar(args.out, _manifest(args, inputs=[args.graph], outputs=[args.out]))
    sys.stdout.write(_dump({"rows": len(rows), "out": args.out}))
    return 0


def cmd_proximity(args) -> int:
    scene = load_scene(args.scene)
    g = gen_proximity(scene)
    manifest = _manifest(args, inputs=[args.scene], outputs=[args.out])
    Path(args.out).write_text(format_edgelist(g, [f"manifest: {json.dumps(manifest, sort_keys=True)}"]))
    sys.stdout.write(_dump({"n": g.n, "m": g.m, "out": args.out}))
    return 0


def cmd_hellinger(args) -> int:
    g = _load_graph(args.graph)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    curves, lccs = [], []
    for i in range(args.trials):
        seed = args.seed + i
        if args.strategy == "random":
            records = random_removal_trajectory(g, seed)
        else:
            records = greedy_edge_removal(g, g.m, Strategy(args.strategy)).trajectory
        traj = divergence_trajectory(g, records)
        path = outdir / f"trial_{seed}.csv"
        write_divergence_csv(path, [s for s, _ in traj], [h for _, h in traj], [r.lcc_size for r in records])
        curves.append([h for _, h in traj])
        lccs.append([r.lcc_size for r in records])
    mean_h = average_trajectories(curves) if g.m else np.zeros(0)
    mean_lcc = average_trajectories(lccs) if g.m else np.zeros(0)
    agg = outdir / "aggregate.csv"
    write_divergence_csv(agg, range(1, len(mean_h) + 1), mean_h, mean_lcc)
    manifest = _manifest(args, inputs=[args.graph], outputs=[agg])
    manifest["hellinger_convention"] = HELLINGER_CONVENTION
    _sidecar(agg, manifest)
    sys.stdout.write(_dump({"trials": args.trials, "steps": len(mean_h), "out_dir": str(outdir)}))
    return 0


# -- parser -----------------------------------------------------------------


def _add_generator_flags(p, required=True):
    p.add_argument("--family", required=required, choices=("complete", "ceb", "gb", "er", "ba", "ws"))
    p.add_argument("--n", type=int, required=False)
    p.add_argument("--p", type=float, default=0.0, help="ER edge probability (0 with --trim: auto)")
    p.add_argument("--m-ba", dest="m_ba", type=int, default=4, help="BA attachment count")
    p.add_argument("--k", type=int, default=8, help="WS ring degree")
    p.add_argument("--p-ws", dest="p_ws", type=float, default=0.2, help="WS rewiring probability")
    p.add_argument("--trim", type=int, default=None, help="trim to exactly this many edges")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fragility", description="Edge-removal fragility of undirected graphs.")
    parser.add_argument("--timestamp", default=None, help="manifest timestamp (default: SOURCE_DATE_EPOCH or now)")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    _add_generator_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("exact", help="closed-form fragility for complete/CEB/GB graphs")
    p.add_argument("--family", required=True, choices=("complete", "ceb", "gb"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=as_fraction, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("oracle", help="brute-force minimum removal count")
    p.add_argument("--graph", default=None)
    p.add_argument("--family", default=None, choices=("complete", "ceb", "gb"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--delta", type=as_fraction, default=None)
    p.add_argument("--golden", default=None, help="write a golden fixture CSV instead")
    p.add_argument("--families", default="complete,ceb")
    p.add_argument("--max-n", dest="max_n", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("attack", help="run one attack and write its trajectory CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", required=True, choices=("edge_betweenness", "min_degree", "random"))
    p.add_argument("--r", type=int, default=None, help="number of removals (default: all edges)")
    p.add_argument("--c", type=int, default=None, help="stop once the LCC is at most c")
    p.add_argument("--delta", type=as_fraction, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("estimate", help="greedy + rewiring + add-back fragility estimate")
    p.add_argument("--graph", default=None)
    _add_generator_flags(p, required=False)
    p.add_argument("--delta", type=as_fraction, default=Fraction(1, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trajectory-dir", dest="trajectory_dir", default=None)
    p.add_argument("--no-timing", dest="no_timing", action="store_true", help="zero stage_ms for byte-stable output")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", help="fragility over several delta values and strategies")
    p.add_argument("--graph", required=True)
    p.add_argument("--deltas", required=True, help="comma-separated, e.g. 0.25,0.5,0.75")
    p.add_argument("--strategies", default=",".join(SWEEP_STRATEGIES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("proximity", help="proximity graph from a layout scene JSON")
    p.add_argument("--scene", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_proximity)

    p = sub.add_parser("hellinger", help="degree-distribution divergence along removal trajectories")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", default="random", choices=("edge_betweenness", "min_degree", "random"))
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.set_defaults(func=cmd_hellinger)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "family", None) and getattr(args, "n", 0) is None and args.command != "oracle":
        parser.error("--n is required with --family")
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except InputFormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (UsageError, GraphError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
