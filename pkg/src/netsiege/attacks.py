"""Target selection for the perfectly informed attacker.

All selectors rank against the round-start topology and return the full
budget's worth of targets in one batch; nothing is re-ranked mid-round.
Ties at the cut boundary are broken uniformly at random from the game's rng
stream so repeated runs with one seed stay deterministic while Monte-Carlo
replications stay unbiased.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, betweenness_centrality

ATTACK_KINDS = ("vertex_order", "centrality", "edge_degree_product", "random_node")


@dataclass(frozen=True)
class AttackSpec:
    kind: str = "vertex_order"
    budget_r: int = 10

    def validate(self) -> None:
        if self.kind not in ATTACK_KINDS:
            raise ValueError(f"unknown attack kind {self.kind!r}, expected one of {ATTACK_KINDS}")
        if self.budget_r < 0:
            raise ValueError(f"attack budget must be >= 0, got {self.budget_r}")


def _top_by_score(items: list, scores: dict, r: int, rng: random.Random) -> list:
    """The r highest-scoring items; boundary ties drawn uniformly at random.

    items must be sorted (determinism); scores maps item -> rankable value.
    """
    r = min(r, len(items))
    if r == 0:
        return []
    ranked = sorted(items, key=lambda x: -scores[x])
    boundary = scores[ranked[r - 1]]
    sure = [x for x in ranked[:r] if scores[x] != boundary]
    tied = [x for x in items if scores[x] == boundary]
    return sure + rng.sample(tied, r - len(sure))


def select_vertex_order_targets(g: Graph, r: int, rng: random.Random) -> list[int]:
    """The min(r, |V|) nodes of highest degree."""
    nodes = g.nodes()
    degrees = {v: g.degree(v) for v in nodes}
    return _top_by_score(nodes, degrees, r, rng)


def select_centrality_targets(g: Graph, r: int, rng: random.Random) -> list[int]:
    """The min(r, |V|) nodes of highest betweenness centrality."""
    nodes = g.nodes()
    scores = betweenness_centrality(g)
    return _top_by_score(nodes, scores, r, rng)


def select_edge_targets(g: Graph, r: int, rng: random.Random) -> list[tuple[int, int]]:
    """The min(r, |E|) edges of highest degree(u) * degree(v)."""
    edges = g.edges()
    products = {(u, v): g.degree(u) * g.degree(v) for u, v in edges}
    return _top_by_score(edges, products, r, rng)


def select_random_targets(g: Graph, r: int, rng: random.Random) -> list[int]:
    """min(r, |V|) distinct nodes uniformly at random."""
    nodes = g.nodes()
    return rng.sample(nodes, min(r, len(nodes)))


def execute_attack(g: Graph, spec: AttackSpec, rng: random.Random):
    """Select targets per spec, remove them from g, and return them.

    Node attacks return destroyed node ids; the edge attack returns (u, v)
    pairs and leaves node count untouched.
    """
    spec.validate()
    if spec.kind == "vertex_order":
        targets = select_vertex_order_targets(g, spec.budget_r, rng)
    elif spec.kind == "centrality":
        targets = select_centrality_targets(g, spec.budget_r, rng)
    elif spec.kind == "random_node":
        targets = select_random_targets(g, spec.budget_r, rng)
    else:
        edge_targets = select_edge_targets(g, spec.budget_r, rng)
        for u, v in edge_targets:
            g.remove_edge(u, v)
        return edge_targets
    for v in targets:
        g.remove_node(v)
    return targets
