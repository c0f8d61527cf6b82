"""Batch driver: flat-key config files, seed batches, sweeps, CSV output.

Config files are diff-friendly `key = value` lines (# comments allowed),
e.g. `attack.kind = centrality`. Any key can be overridden from the command
line with --set, which is also how scripted sweeps are driven.
"""

from __future__ import annotations

import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _kernels
from .attacks import ATTACK_KINDS, AttackSpec
from .defenses import ADAPT_KINDS, REPLENISH_KINDS, DefenseSpec
from .engine import GameConfig, GameTrace, run_game
from .generate import BAParams

CSV_HEADER = "run_id,seed,sweep_param,sweep_value,round,nodes,edges,lcc,aigl"

DEFAULT_SEED_COUNT = 20

DEFAULTS = {
    "generator.m0": "40",
    "generator.nodes_per_round": "10",
    "generator.edges_per_node": "3",
    "generator.target_n": "400",
    "attack.kind": "vertex_order",
    "attack.budget": "10",
    "defense.replenish": "none",
    "defense.adapt": "none",
    "defense.group_size": "12",
    "defense.threshold": "auto",
    "defense.k": "auto",
    "defense.delegation_steps": "1",
    "defense.immunize_rounds": "0",
    "rounds": "30",
    "disruption_fraction": "0.5",
    "min_component": "2",
    "seeds": "",
    "seeds.start": "",
    "seeds.count": "",
    "sweep.param": "",
    "sweep.values": "",
    "output": "results.csv",
    "workers": "",
}

# keys a sweep may vary (anything that feeds GameConfig)
GAME_KEYS = frozenset(
    k
    for k in DEFAULTS
    if k.startswith(("generator.", "attack.", "defense."))
    or k in ("rounds", "disruption_fraction", "min_component")
)


class ConfigError(Exception):
    """Invalid experiment configuration; problems lists offending keys."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse `key = value` lines into a flat dict, rejecting unknown keys."""
    values: dict[str, str] = {}
    problems: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            problems.append(f"{source}:{lineno}: expected 'key = value', got {line!r}")
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in DEFAULTS:
            problems.append(f"{source}:{lineno}: unknown key {key!r}")
            continue
        values[key] = value
    if problems:
        raise ConfigError(problems)
    return values


def _parse_int(values, key, problems, minimum=None):
    raw = values[key]
    try:
        out = int(raw)
    except ValueError:
        problems.append(f"{key}: expected an integer, got {raw!r}")
        return 0
    if minimum is not None and out < minimum:
        problems.append(f"{key}: must be >= {minimum}, got {out}")
    return out

def _parse_float(values, key, problems):
    raw = values[key]
    try:
        return float(raw)
    except ValueError:
        problems.append(f"{key}: expected a number, got {raw!r}")
        return 0.0


def _parse_auto_float(values, key, problems):
    raw = values[key]
    if raw.lower() in ("auto", ""):
        return None
    return _parse_float(values, key, problems)


def _parse_choice(values, key, choices, problems):
    raw = values[key]
    if raw not in choices:
        problems.append(f"{key}: expected one of {', '.join(choices)}, got {raw!r}")
    return raw


def build_game_config(values: dict[str, str], seed: int) -> GameConfig:
    """Materialize one GameConfig from the flat key/value view."""
    merged = dict(DEFAULTS)
    merged.update(values)
    values = merged
    problems: list[str] = []
    generator = BAParams(
        m0=_parse_int(values, "generator.m0", problems, minimum=1),
        nodes_per_round=_parse_int(values, "generator.nodes_per_round", problems, minimum=1),
        edges_per_node=_parse_int(values, "generator.edges_per_node", problems, minimum=1),
        target_n=_parse_int(values, "generator.target_n", problems, minimum=1),
    )
    attack = AttackSpec(
        kind=_parse_choice(values, "attack.kind", ATTACK_KINDS, problems),
        budget_r=_parse_int(values, "attack.budget", problems, minimum=0),
    )
    defense = DefenseSpec(
        replenish_kind=_parse_choice(values, "defense.replenish", REPLENISH_KINDS, problems),
        adapt_kind=_parse_choice(values, "defense.adapt", ADAPT_KINDS, problems),
        group_size_n=_parse_int(values, "defense.group_size", problems, minimum=3),
        vuln_threshold=_parse_auto_float(values, "defense.threshold", problems),
        target_mean_degree_k=_parse_auto_float(values, "defense.k", problems),
        delegation_steps=_parse_int(values, "defense.delegation_steps", problems, minimum=1),
        immunize_rounds=_parse_int(values, "defense.immunize_rounds", problems, minimum=0),
    )
    config = GameConfig(
        generator=generator,
        attack=attack,
        defense=defense,
        rounds=_parse_int(values, "rounds", problems, minimum=0),
        seed=seed,
        disruption_fraction=_parse_float(values, "disruption_fraction", problems),
        min_component=_parse_int(values, "min_component", problems, minimum=1),
    )
    if problems:
        raise ConfigError(problems)
    try:
        config.validate()
    except ValueError as exc:
        raise ConfigError([str(exc)])
    return config


def _parse_seeds(values: dict[str, str], problems: list[str]) -> list[int]:
    raw = values["seeds"]
    if raw:
        try:
            seeds = [int(s.strip()) for s in raw.split(",") if s.strip()]
        except ValueError:
            problems.append(f"seeds: expected comma-separated integers, got {raw!r}")
            return []
        if not seeds:
            problems.append("seeds: empty list")
        return seeds
    if values["seeds.start"] or values["seeds.count"]:
        start = _parse_int(values, "seeds.start", problems) if values["seeds.start"] else 1
        count = (
            _parse_int(values, "seeds.count", problems, minimum=1)
            if values["seeds.count"]
            else DEFAULT_SEED_COUNT
        )
        return list(range(start, start + count))
    return list(range(1, 1 + DEFAULT_SEED_COUNT))


@dataclass
class ExperimentConfig:
    """One batch: a base game per seed, optionally swept over one key."""

    values: dict[str, str]
    seeds: list[int]
    sweep_param: str | None
    sweep_values: list[str]
    output_path: str
    workers: int | None

    @property
    def base(self) -> GameConfig:
        return build_game_config(self.values, seed=0)


def build_experiment_config(values: dict[str, str]) -> ExperimentConfig:
    merged = dict(DEFAULTS)
    merged.update(values)
    problems: list[str] = []
    seeds = _parse_seeds(merged, problems)

    sweep_param = merged["sweep.param"] or None
    sweep_values: list[str] = []
    if sweep_param is not None:
        if sweep_param not in GAME_KEYS:
            problems.append(f"sweep.param: {sweep_param!r} is not a sweepable key")
        sweep_values = [s.strip() for s in merged["sweep.values"].split(",") if s.strip()]
        if not sweep_values:
            problems.append("sweep.values: must be non-empty when sweep.param is set")
    elif merged["sweep.values"]:
        problems.append("sweep.values: set without sweep.param")

    workers = None
    if merged["workers"]:
        workers = _parse_int(merged, "workers", problems, minimum=1)

    if problems:
        raise ConfigError(problems)

    cfg = ExperimentConfig(
        values=merged,
        seeds=seeds,
        sweep_param=sweep_param,
        sweep_values=sweep_values,
        output_path=merged["output"],
        workers=workers,
    )
    # fail fast on game-level problems before any simulation
    cfg.base
    if sweep_param is not None:
        for value in sweep_values:
            swept = dict(merged)
            swept[sweep_param] = value
            build_game_config(swept, seed=0)
    return cfg


@dataclass(frozen=True)
class Job:
    run_id: int
    seed: int
    sweep_param: str
    sweep_value: str
    config: GameConfig


def expand_jobs(cfg: ExperimentConfig) -> list[Job]:
    """One job per (sweep value x seed), run_id in deterministic order."""
    jobs: list[Job] = []
    sweep_pairs = (
        [(cfg.sweep_param, v) for v in cfg.sweep_values]
        if cfg.sweep_param is not None
        else [("", "")]
    )
    run_id = 0
    for param, value in sweep_pairs:
        values = dict(cfg.values)
        if param:
            values[param] = value
        for seed in cfg.seeds:
            jobs.append(Job(run_id, seed, param, value, build_game_config(values, seed)))
            run_id += 1
    return jobs


def run_traces(configs, workers: int | None = None) -> list[GameTrace]:
    """Run games serially or across a worker pool; order follows the input.

    Games are independent, so parallel and serial execution produce the
    same traces.
    """
    configs = list(configs)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(configs) <= 1:
        return [run_game(c) for c in configs]
    _kernels.warmup()  # children forked after this inherit the compiled kernels
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_game, configs, chunksize=1))


def emit_csv(results: list[tuple[Job, GameTrace]], path) -> int:
    """Write one row per round per trace, ordered by (run_id, round).

    Returns the number of data rows written.
    """
    rows = 0
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for job, trace in results:
            for rec in trace.records:
                fh.write(
                    f"{job.run_id},{job.seed},{job.sweep_param},{job.sweep_value},"
                    f"{rec.round},{rec.node_count},{rec.edge_count},"
                    f"{rec.lcc_size},{rec.aigl:.6f}\n"
                )
                rows += 1
    return rows


EQUILIBRIUM_WINDOW = 5  # final rounds treated as the settled state


@dataclass
class RoundStats:
    round: int
    lcc_mean: float
    lcc_std: float
    aigl_mean: float
    aigl_std: float


@dataclass
class GroupSummary:
    sweep_value: str
    per_round: list[RoundStats]
    equilibrium_lcc: float
    equilibrium_aigl: float


@dataclass
class ExperimentSummary:
    sweep_param: str
    groups: list[GroupSummary]


def _std(xs: list[float]) -> float:
    return statistics.stdev(xs) if len(xs) > 1 else 0.0


def equilibrium_lcc(trace: GameTrace, window: int = EQUILIBRIUM_WINDOW) -> float:
    tail = trace.records[-window:]
    return statistics.fmean(rec.lcc_size for rec in tail)


def equilibrium_aigl(trace: GameTrace, window: int = EQUILIBRIUM_WINDOW) -> float:
    tail = trace.records[-window:]
    return statistics.fmean(rec.aigl for rec in tail)


def summarize(results: list[tuple[Job, GameTrace]]) -> ExperimentSummary:
    """Per-round mean/std of LCC and AIGL for each sweep value."""
    by_value: dict[str, list[GameTrace]] = {}
    sweep_param = ""
    for job, trace in results:
        sweep_param = job.sweep_param
        by_value.setdefault(job.sweep_value, []).append(trace)
    groups = []
    for value in sorted(by_value):
        traces = by_value[value]
        n_rounds = len(traces[0].records)
        per_round = []
        for i in range(n_rounds):
            lccs = [float(t.records[i].lcc_size) for t in traces]
            aigls = [t.records[i].aigl for t in traces]
            per_round.append(
                RoundStats(
                    round=i,
                    lcc_mean=statistics.fmean(lccs),
                    lcc_std=_std(lccs),
                    aigl_mean=statistics.fmean(aigls),
                    aigl_std=_std(aigls),
                )
            )
        groups.append(
            GroupSummary(
                sweep_value=value,
                per_round=per_round,
                equilibrium_lcc=statistics.fmean(equilibrium_lcc(t) for t in traces),
                equilibrium_aigl=statistics.fmean(equilibrium_aigl(t) for t in traces),
            )
        )
    return ExperimentSummary(sweep_param=sweep_param, groups=groups)


def run_experiment(cfg: ExperimentConfig) -> ExperimentSummary:
    """Run every (seed x sweep value) game, write the CSV, return the summary."""
    jobs = expand_jobs(cfg)
    traces = run_traces([job.config for job in jobs], workers=cfg.workers)
    results = list(zip(jobs, traces))
    emit_csv(results, cfg.output_path)
    return summarize(results)
