"""Command-line front end.

Subcommands:
  run       play a batch of games from a config file, write the trace CSV
  generate  build the initial network only and write its edge list
  metrics   one-shot connectivity report for an edge-list file

Exit codes: 0 success, 1 configuration error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .experiment import (
    ConfigError,
    ExperimentConfig,
    build_experiment_config,
    build_game_config,
    parse_config_text,
    run_experiment,
)
from .generate import generate_ba
from .graph import (
    average_inverse_geodesic_length,
    betweenness_centrality,
    connected_components,
    read_edge_list,
    write_edge_list,
)


def _load_experiment(config_path: str, overrides: list[str]) -> ExperimentConfig:
    try:
        text = Path(config_path).read_text()
    except OSError as exc:
        raise ConfigError([f"cannot read config {config_path}: {exc}"])
    values = parse_config_text(text, source=config_path)
    problems = []
    for item in overrides:
        if "=" not in item:
            problems.append(f"--set {item!r}: expected key=value")
            continue
        key, _, value = item.partition("=")
        values[key.strip()] = value.strip()
    if problems:
        raise ConfigError(problems)
    # --set may introduce keys the file didn't have; revalidate names
    return build_experiment_config(parse_config_text(
        "\n".join(f"{k} = {v}" for k, v in values.items()), source="<resolved>"
    ))


def _log_resolved(cfg: ExperimentConfig) -> None:
    print("resolved config:", file=sys.stderr)
    for key in sorted(cfg.values):
        if cfg.values[key] != "":
            print(f"  {key} = {cfg.values[key]}", file=sys.stderr)
    print(f"  (seeds: {','.join(str(s) for s in cfg.seeds)})", file=sys.stderr)


def _cmd_run(args) -> int:
    cfg = _load_experiment(args.config, args.set or [])
    if args.out:
        cfg.output_path = args.out
    if args.workers:
        cfg.workers = args.workers
    _log_resolved(cfg)
    summary = run_experiment(cfg)
    for group in summary.groups:
        label = f"{summary.sweep_param}={group.sweep_value}" if group.sweep_value else "all runs"
        final = group.per_round[-1]
        print(
            f"{label}: equilibrium lcc={group.equilibrium_lcc:.1f} "
            f"aigl={group.equilibrium_aigl:.4f} | final round "
            f"lcc={final.lcc_mean:.1f}±{final.lcc_std:.1f}"
        )
    if args.summary_out:
        with open(args.summary_out, "w") as fh:
            fh.write("sweep_value,round,lcc_mean,lcc_std,aigl_mean,aigl_std\n")
            for group in summary.groups:
                for rs in group.per_round:
                    fh.write(
                        f"{group.sweep_value},{rs.round},{rs.lcc_mean:.6f},"
                        f"{rs.lcc_std:.6f},{rs.aigl_mean:.6f},{rs.aigl_std:.6f}\n"
                    )
    print(f"wrote {cfg.output_path}")
    return 0


def _cmd_generate(args) -> int:
    cfg = _load_experiment(args.config, args.set or [])
    game = build_game_config(cfg.values, seed=cfg.seeds[0])
    g = generate_ba(game.generator, random.Random(game.seed))
    write_edge_list(g, args.out)
    print(f"wrote {g.node_count} nodes / {g.edge_count} edges to {args.out}")
    return 0


def _cmd_metrics(args) -> int:
    g = read_edge_list(args.input)
    parts = connected_components(g)
    print(f"nodes: {g.node_count}")
    print(f"edges: {g.edge_count}")
    print(f"components: {len(parts.components)}")
    print(f"largest component: {parts.largest_size}")
    if g.node_count >= 2:
        print(f"aigl: {average_inverse_geodesic_length(g):.6f}")
    scores = betweenness_centrality(g)
    top = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:10]
    print("top betweenness:")
    for v, score in top:
        print(f"  {v}: {score:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netsiege",
        description="Multi-round attack/defense games on network topologies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment batch and emit CSV traces")
    p_run.add_argument("config", help="path to a key = value config file")
    p_run.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (repeatable)")
    p_run.add_argument("--workers", type=int, default=None,
                       help="worker processes (default: available parallelism)")
    p_run.add_argument("--out", default=None, help="output CSV path (overrides config)")
    p_run.add_argument("--summary-out", default=None,
                       help="also write per-round mean/std summary CSV")
    p_run.set_defaults(func=_cmd_run)

    p_gen = sub.add_parser("generate", help="generate the initial network only")
    p_gen.add_argument("config", help="path to a key = value config file")
    p_gen.add_argument("--set", action="append", metavar="KEY=VALUE")
    p_gen.add_argument("--out", required=True, help="edge-list output path")
    p_gen.set_defaults(func=_cmd_generate)

    p_met = sub.add_parser("metrics", help="report LCC/AIGL/centrality for an edge list")
    p_met.add_argument("--in", dest="input", required=True, help="edge-list input path")
    p_met.set_defaults(func=_cmd_metrics)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
