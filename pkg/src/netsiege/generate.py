"""Scale-free network construction by preferential attachment.

The initial seed nodes are wired in a ring (minimal, connected, and
degree-uniform so early attachment draws are unbiased), then each new node
attaches to distinct existing nodes with probability proportional to current
degree. Degrees update after every single insertion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class BAParams:
    """Generator parameters: m0 seed nodes, then grow to target_n nodes
    adding edges_per_node preferential edges per newcomer. nodes_per_round
    is narrative batching only and does not affect the wiring."""

    m0: int = 40
    nodes_per_round: int = 10
    edges_per_node: int = 3
    target_n: int = 400

    def validate(self) -> None:
        if self.edges_per_node < 1:
            raise ValueError(f"edges_per_node must be >= 1, got {self.edges_per_node}")
        if self.m0 < self.edges_per_node:
            raise ValueError(
                f"m0 ({self.m0}) must be at least edges_per_node ({self.edges_per_node})"
            )
        if self.target_n < self.m0:
            raise ValueError(f"target_n ({self.target_n}) must be >= m0 ({self.m0})")
        if self.nodes_per_round < 1:
            raise ValueError(f"nodes_per_round must be >= 1, got {self.nodes_per_round}")


def preferential_targets(
    g: Graph, candidates: list[int], k: int, rng: random.Random
) -> list[int]:
    """Draw up to k distinct nodes from candidates, probability proportional
    to current degree; duplicates are rejected and redrawn.

    Falls back to uniform sampling when every candidate has degree 0.
    candidates must be sorted for reproducibility.
    """
    k = min(k, len(candidates))
    if k == 0:
        return []
    weights = [g.degree(v) for v in candidates]
    total = sum(weights)
    if total == 0:
        return rng.sample(candidates, k)
    chosen: list[int] = []
    chosen_set: set[int] = set()
    while len(chosen) < k:
        x = rng.random() * total
        acc = 0.0
        pick = candidates[-1]
        for v, w in zip(candidates, weights):
            acc += w
            if x < acc:
                pick = v
                break
        if pick not in chosen_set:
            chosen_set.add(pick)
            chosen.append(pick)
    return chosen


def generate_ba(params: BAParams, rng: random.Random) -> Graph:
    """Grow a scale-free graph of exactly params.target_n nodes.

    Edge count is m0 + edges_per_node * (target_n - m0) for m0 >= 3
    (the ring seed contributes m0 edges).
    """
    params.validate()
    g = Graph()
    seeds = [g.add_node() for _ in range(params.m0)]
    if params.m0 == 2:
        g.add_edge(seeds[0], seeds[1])
    elif params.m0 >= 3:
        for i, v in enumerate(seeds):
            g.add_edge(v, seeds[(i + 1) % params.m0])

    existing = list(seeds)
    for _ in range(params.target_n - params.m0):
        targets = preferential_targets(g, existing, params.edges_per_node, rng)
        v = g.add_node()
        for t in targets:
            g.add_edge(v, t)
        existing.append(v)
    return g
