"""Command-line front end: instance generation, batch solving, oracle
queries, benchmark sweeps, and statistics export.

Subcommands: gen, solve, oracle, bench, stats. Defaults follow the
5/20/5/5/20/5 stage schedule with 40 iterations. A flat key=value config
file (see RunConfig.CONFIG_KEYS) can override defaults; CLI flags override
the file. POTTSIM_CONFIG names a default config path.
"""

from __future__ import annotations

import argparse
import glob
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

from .dynamics import DynamicsParams
from .graph import GraphFormatError, kings_graph, load_graph, save_graph
from .metrics import aggregate
from .oracle import OracleTimeout, exact_coloring
from .scheduler import SolveResult, StagePlan, solve_kcoloring
from .seeds import mix_seed

CONFIG_ENV_VAR = "POTTSIM_CONFIG"

__all__ = ["RunConfig", "run_batch", "main"]


@dataclass
class RunConfig:
    """Everything a batch run needs: physics, schedule, and batch shape."""

    dynamics: DynamicsParams = field(default_factory=DynamicsParams)
    plan: StagePlan = field(default_factory=StagePlan)
    iterations: int = 40
    master_seed: int = 0
    colors: int = 4
    output_dir: str | None = None

    CONFIG_KEYS = (
        "coupling", "locking", "noise", "dt",
        "t_init", "t_anneal1", "t_lock1", "t_relax", "t_anneal2", "t_lock2",
        "sigma_relax", "iterations", "seed", "colors",
    )

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.colors not in (2, 4, 8, 16):
            raise ValueError("colors must be one of 2, 4, 8, 16")

    @property
    def stages(self) -> int:
        return int(math.log2(self.colors))

    @classmethod
    def from_sources(cls, config_path: str | None = None, **overrides) -> "RunConfig":
        """Build from defaults <- config file <- explicit overrides."""
        values: dict = {}
        path = config_path or os.environ.get(CONFIG_ENV_VAR)
        if path:
            values.update(_parse_config_file(path))
        values.update({k: v for k, v in overrides.items() if v is not None})
        dyn = DynamicsParams(
            coupling=float(values.get("coupling", DynamicsParams.coupling)),
            locking=float(values.get("locking", DynamicsParams.locking)),
            noise=float(values.get("noise", DynamicsParams.noise)),
            dt=float(values.get("dt", DynamicsParams.dt)),
        )
        plan = StagePlan(
            t_init=float(values.get("t_init", StagePlan.t_init)),
            t_anneal1=float(values.get("t_anneal1", StagePlan.t_anneal1)),
            t_lock1=float(values.get("t_lock1", StagePlan.t_lock1)),
            t_relax=float(values.get("t_relax", StagePlan.t_relax)),
            t_anneal2=float(values.get("t_anneal2", StagePlan.t_anneal2)),
            t_lock2=float(values.get("t_lock2", StagePlan.t_lock2)),
            sigma_relax=float(values.get("sigma_relax", StagePlan.sigma_relax)),
        )
        return cls(
            dynamics=dyn,
            plan=plan,
            iterations=int(values.get("iterations", 40)),
            master_seed=int(values.get("seed", 0)),
            colors=int(values.get("colors", 4)),
            output_dir=values.get("output_dir"),
        )


def _parse_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in RunConfig.CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = val
    return values


def run_batch(graph, config: RunConfig) -> tuple[list[SolveResult], "object"]:
    """Run config.iterations independent solves; returns (results, RunStats).

    Iteration i uses seed mix_seed(master_seed, i), so results are ordered
    and reproducible regardless of execution order.
    """
    from .scheduler import _resolve_cut_baseline

    baseline = _resolve_cut_baseline(graph)
    results = []
    for i in range(config.iterations):
        results.append(
            solve_kcoloring(
                graph,
                config.stages,
                params=config.dynamics,
                plan=config.plan,
                seed=mix_seed(config.master_seed, i),
                baseline_cut=baseline if baseline > 0 else None,
            )
        )
    return results, aggregate(results, graph)


def _write_results(outdir: str, results, stats) -> None:
    os.makedirs(outdir, exist_ok=True)
    for i, res in enumerate(results):
        with open(os.path.join(outdir, f"result_{i:04d}.json"), "w") as fh:
            json.dump(res.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    stats.to_json(os.path.join(outdir, "stats.json"))
    stats.to_csv(os.path.join(outdir, "stats.csv"))


def cmd_gen(args) -> int:
    graph = kings_graph(args.kings)
    try:
        save_graph(graph, args.output, args.format)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}: {graph.n} nodes, {graph.edge_count} edges")
    return 0


def cmd_solve(args) -> int:
    try:
        graph = load_graph(args.graph)
    except (OSError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        config = RunConfig.from_sources(
            args.config,
            coupling=args.coupling, locking=args.locking,
            noise=args.noise, dt=args.dt,
            iterations=args.iters, seed=args.seed, colors=args.colors,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    results, stats = run_batch(graph, config)
    if args.output_dir:
        _write_results(args.output_dir, results, stats)
    print(
        f"{graph.n} nodes, {config.colors} colors, {config.iterations} iterations: "
        f"best accuracy {stats.best_accuracy:.4f}, mean {stats.mean_accuracy:.4f}"
    )
    print(
        f"stage correlation (pearson): {stats.stage_correlation:.4f}"
        + (" [degenerate]" if stats.correlation_degenerate else "")
    )
    total = sum(r.wall_time for r in results)
    print(f"wall time: {total:.2f}s")
    return 0


def cmd_oracle(args) -> int:
    try:
        graph = load_graph(args.graph)
        witness = exact_coloring(graph, args.colors, time_budget=args.time_budget)
    except (OSError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OracleTimeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if witness is None:
        print(f"not colorable with {args.colors} colors")
    else:
        print(f"colorable with {args.colors} colors")
        print("coloring:", " ".join(map(str, witness)))
    return 0


def cmd_bench(args) -> int:
    sides = sorted(args.sides)
    rows = []
    for side in sides:
        graph = kings_graph(side)
        config = RunConfig.from_sources(
            args.config, iterations=args.iters, seed=args.seed, colors=args.colors,
        )
        t0 = time.perf_counter()
        _, stats = run_batch(graph, config)
        elapsed = time.perf_counter() - t0
        rows.append(
            (
                graph.n,
                f"{config.colors}^{graph.n}",
                config.iterations,
                stats.best_accuracy,
                stats.mean_accuracy,
                elapsed,
            )
        )
        print(
            f"side {side} ({graph.n} nodes): best {stats.best_accuracy:.4f}, "
            f"mean {stats.mean_accuracy:.4f}, {elapsed:.1f}s"
        )
    header = "size,search_space,iterations,best_accuracy,mean_accuracy,wall_time_s"
    lines = [header] + [
        f"{n},{space},{iters},{best:.6f},{mean:.6f},{secs:.3f}"
        for n, space, iters, best, mean, secs in rows
    ]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_stats(args) -> int:
    try:
        graph = load_graph(args.graph)
    except (OSError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    paths = sorted(glob.glob(os.path.join(args.results_dir, "result_*.json")))
    if not paths:
        print(f"error: no result_*.json files in {args.results_dir}", file=sys.stderr)
        return 1
    results = []
    for path in paths:
        with open(path) as fh:
            results.append(SolveResult.from_dict(json.load(fh)))
    stats = aggregate(results, graph)
    stats.to_json(os.path.join(args.results_dir, "stats.json"))
    stats.to_csv(os.path.join(args.results_dir, "stats.csv"))
    print(
        f"{len(results)} results: best accuracy {stats.best_accuracy:.4f}, "
        f"mean {stats.mean_accuracy:.4f}, "
        f"stage correlation {stats.stage_correlation:.4f}"
    )
    return 0


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _side_list(value: str) -> list[int]:
    return [_positive_int(part) for part in value.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pottsim",
        description="Phase-dynamics Potts machine: staged max-cut graph coloring",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a King's-graph instance")
    p_gen.add_argument("--kings", type=_positive_int, required=True, metavar="SIDE")
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.add_argument("--format", choices=("dimacs_col", "json_edges"))
    p_gen.set_defaults(func=cmd_gen)

    p_solve = sub.add_parser("solve", help="run a batch of staged solves")
    p_solve.add_argument("-g", "--graph", required=True)
    p_solve.add_argument("--colors", type=int, choices=(2, 4, 8, 16))
    p_solve.add_argument("--iters", type=_positive_int, dest="iters")
    p_solve.add_argument("--seed", type=int)
    p_solve.add_argument("--config", help="key=value config file")
    p_solve.add_argument("--coupling", type=float)
    p_solve.add_argument("--locking", type=float)
    p_solve.add_argument("--noise", type=float)
    p_solve.add_argument("--dt", type=float)
    p_solve.add_argument("-o", "--output-dir")
    p_solve.set_defaults(func=cmd_solve)

    p_oracle = sub.add_parser("oracle", help="exact colorability check")
    p_oracle.add_argument("-g", "--graph", required=True)
    p_oracle.add_argument("--colors", type=_positive_int, required=True)
    p_oracle.add_argument("--time-budget", type=float, default=None)
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="King's-graph benchmark sweep")
    p_bench.add_argument("--sides", type=_side_list, required=True)
    p_bench.add_argument("--iters", type=_positive_int, dest="iters")
    p_bench.add_argument("--seed", type=int)
    p_bench.add_argument("--colors", type=int, choices=(2, 4, 8, 16))
    p_bench.add_argument("--config")
    p_bench.add_argument("-o", "--output")
    p_bench.set_defaults(func=cmd_bench)

    p_stats = sub.add_parser("stats", help="re-aggregate saved result files")
    p_stats.add_argument("-g", "--graph", required=True)
    p_stats.add_argument("results_dir")
    p_stats.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
