"""Seed-reproducible multi-round attack/defense games on network topologies."""

from .attacks import AttackSpec, execute_attack
from .defenses import DefenseSpec, GroupRegistry
from .engine import GameConfig, GameTrace, RoundRecord, is_partitioned, run_game
from .generate import BAParams, generate_ba
from .graph import (
    ComponentPartition,
    Graph,
    average_inverse_geodesic_length,
    betweenness_centrality,
    connected_components,
    largest_component_size,
    read_edge_list,
    write_edge_list,
)

__all__ = [
    "AttackSpec",
    "BAParams",
    "ComponentPartition",
    "DefenseSpec",
    "GameConfig",
    "GameTrace",
    "Graph",
    "GroupRegistry",
    "RoundRecord",
    "average_inverse_geodesic_length",
    "betweenness_centrality",
    "connected_components",
    "execute_attack",
    "generate_ba",
    "is_partitioned",
    "largest_component_size",
    "read_edge_list",
    "run_game",
    "write_edge_list",
]

__version__ = "0.1.0"
