"""Orchestrates one repeated attack/defense game and records its trace.

A game is: generate the network, run any pre-hostility immunization phases,
apply the initial adaptation, record round 0, then for each round execute
attack -> replenish (node-for-node parity) -> adapt and record the round's
metrics. All randomness flows from one generator seeded by the config, in a
fixed order (attack draws, replenishment draws, adaptation draws), so a
seed fully determines the trace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .attacks import AttackSpec, execute_attack
from .defenses import (
    DefenseSpec,
    GroupRegistry,
    adapt_cliques,
    adapt_delegate,
    adapt_delegate_then_clique,
    adapt_rings,
    replenish_random,
    replenish_scale_free,
)
from .generate import BAParams, generate_ba
from .graph import Graph, average_inverse_geodesic_length, connected_components


@dataclass(frozen=True)
class GameConfig:
    """Full description of one game: network, strategies, length, seed."""

    generator: BAParams = BAParams()
    attack: AttackSpec = AttackSpec()
    defense: DefenseSpec = DefenseSpec()
    rounds: int = 30
    seed: int = 0
    disruption_fraction: float = 0.5
    min_component: int = 2

    def validate(self) -> None:
        self.generator.validate()
        self.attack.validate()
        self.defense.validate()
        if self.rounds < 0:
            raise ValueError(f"rounds must be >= 0, got {self.rounds}")
        if not 0.0 < self.disruption_fraction <= 1.0:
            raise ValueError(
                f"disruption_fraction must be in (0, 1], got {self.disruption_fraction}"
            )
        if self.min_component < 1:
            raise ValueError(f"min_component must be >= 1, got {self.min_component}")


@dataclass
class RoundRecord:
    """Metrics captured after one round. Round 0 is the post-initial-
    adaptation, pre-attack state. nontrivial_components counts components
    of at least min_component nodes (partition detection)."""

    round: int
    node_count: int
    edge_count: int
    lcc_size: int
    aigl: float
    nontrivial_components: int
    destroyed: list = field(default_factory=list)


@dataclass
class GameTrace:
    config: GameConfig
    records: list[RoundRecord]

    @property
    def initial_n(self) -> int:
        return self.records[0].node_count

    @property
    def disruption_round(self) -> int | None:
        """First round whose LCC fell below disruption_fraction * initial N."""
        cutoff = self.config.disruption_fraction * self.initial_n
        for rec in self.records:
            if rec.lcc_size < cutoff:
                return rec.round
        return None

    @property
    def partition_round(self) -> int | None:
        """First round with two or more nontrivial components."""
        for rec in self.records:
            if rec.nontrivial_components >= 2:
                return rec.round
        return None


def is_partitioned(g: Graph, min_component: int = 2) -> bool:
    """True iff the graph has >= 2 components of at least min_component nodes."""
    nontrivial = sum(
        1 for c in connected_components(g).components if len(c) >= min_component
    )
    return nontrivial >= 2


def _measure(round_index: int, g: Graph, destroyed: list, config: GameConfig) -> RoundRecord:
    parts = connected_components(g)
    nontrivial = sum(1 for c in parts.components if len(c) >= config.min_component)
    aigl = average_inverse_geodesic_length(g) if g.node_count >= 2 else 0.0
    return RoundRecord(
        round=round_index,
        node_count=g.node_count,
        edge_count=g.edge_count,
        lcc_size=parts.largest_size,
        aigl=aigl,
        nontrivial_components=nontrivial,
        destroyed=list(destroyed),
    )


def _adapt_phase(
    g: Graph,
    reg: GroupRegistry,
    spec: DefenseSpec,
    fresh: list[int],
    rng: random.Random,
    hostilities: bool,
) -> None:
    kind = spec.adapt_kind
    if kind == "none":
        return
    if kind == "ring":
        adapt_rings(g, reg, spec, fresh, rng)
    elif kind == "clique":
        adapt_cliques(g, reg, spec, fresh, rng)
    elif kind == "delegate":
        adapt_delegate(g, spec, rng)
    elif kind == "delegate_then_clique":
        if hostilities:
            adapt_delegate_then_clique(g, reg, spec, fresh, rng)
        else:
            adapt_delegate(g, spec, rng)


def _replenish(
    g: Graph,
    lost: int,
    spec: DefenseSpec,
    resolved_k: float,
    edges_per_node: int,
    rng: random.Random,
) -> list[int]:
    if spec.replenish_kind == "none" or lost == 0:
        return []
    if spec.replenish_kind == "random":
        return replenish_random(g, lost, resolved_k, rng)
    return replenish_scale_free(g, lost, edges_per_node, rng)


def run_game(config: GameConfig, checks: bool = False) -> GameTrace:
    """Play one full game and return its per-round trace.

    checks=True additionally audits the structural invariants after every
    phase (adjacency symmetry, group disjointness, no component merges
    during adaptation, budget parity) and is meant for test builds.
    """
    config.validate()
    rng = random.Random(config.seed)
    g = generate_ba(config.generator, rng)
    reg = GroupRegistry()
    defense = config.defense
    resolved_k = (
        defense.target_mean_degree_k
        if defense.target_mean_degree_k is not None
        else g.mean_degree
    )

    def audit_adapt(fresh: list[int], hostilities: bool) -> None:
        before = len(connected_components(g).components)
        _adapt_phase(g, reg, defense, fresh, rng, hostilities)
        after = len(connected_components(g).components)
        if after < before:
            raise AssertionError(
                f"adaptation merged components ({before} -> {after})"
            )
        g.audit()
        reg.audit()

    adapt = audit_adapt if checks else (
        lambda fresh, hostilities: _adapt_phase(g, reg, defense, fresh, rng, hostilities)
    )

    for _ in range(defense.immunize_rounds):
        adapt([], False)
    adapt([], False)

    records = [_measure(0, g, [], config)]
    for round_index in range(1, config.rounds + 1):
        pre_attack_nodes = g.node_count
        pre_attack_lcc = connected_components(g).largest_size if checks else 0
        destroyed = execute_attack(g, config.attack, rng)
        node_losses = [d for d in destroyed if isinstance(d, int)]
        if checks:
            g.audit()
            if connected_components(g).largest_size > pre_attack_lcc:
                raise AssertionError("attack increased the largest component")
        reg.remove_destroyed(node_losses)
        fresh = _replenish(
            g, len(node_losses), defense, resolved_k, config.generator.edges_per_node, rng
        )
        if checks and defense.replenish_kind != "none":
            if g.node_count != pre_attack_nodes:
                raise AssertionError(
                    f"budget parity broken: {pre_attack_nodes} -> {g.node_count}"
                )
        adapt(fresh, True)
        records.append(_measure(round_index, g, destroyed, config))
    return GameTrace(config, records)
