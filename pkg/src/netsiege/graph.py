"""Undirected simple graph plus the connectivity metrics the games record.

Node ids are non-negative integers handed out monotonically; an id is never
reused once its node has been destroyed, so a node can be tracked across
game rounds. All public iteration happens in ascending id order, which keeps
seeded simulations bit-reproducible across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels


class GraphError(Exception):
    """Base class for graph-structure errors."""


class UnknownNodeError(GraphError):
    """Operation referenced a node id that is not in the graph."""


class SelfLoopError(GraphError):
    """Attempt to create an edge from a node to itself."""


class MissingEdgeError(GraphError):
    """Operation referenced an edge that is not in the graph."""


class Graph:
    """Mutable undirected simple graph over integer node ids.

    Stored as a dict of adjacency sets with both directions kept in sync.
    Single-writer: callers must not mutate one instance from two threads.
    """

    __slots__ = ("_adj", "_next_id", "_edge_count")

    def __init__(self):
        self._adj: dict[int, set[int]] = {}
        self._next_id = 0
        self._edge_count = 0

    @classmethod
    def from_edges(cls, edges, isolated=()) -> "Graph":
        """Build a graph with explicit node ids from (u, v) pairs."""
        g = cls()
        for v in isolated:
            g._ensure_node(v)
        for a, b in edges:
            g._ensure_node(a)
            g._ensure_node(b)
            g.add_edge(a, b)
        return g

    def _ensure_node(self, v: int) -> None:
        if v < 0:
            raise ValueError(f"node ids must be non-negative, got {v}")
        if v not in self._adj:
            self._adj[v] = set()
            if v >= self._next_id:
                self._next_id = v + 1

    # ----- mutation -----

    def add_node(self) -> int:
        """Insert an isolated node and return its fresh id."""
        v = self._next_id
        self._next_id += 1
        self._adj[v] = set()
        return v

    def add_edge(self, a: int, b: int) -> None:
        """Insert edge {a, b}; a no-op if the edge already exists."""
        if a == b:
            raise SelfLoopError(f"self-loop on node {a}")
        if a not in self._adj:
            raise UnknownNodeError(f"unknown node {a}")
        if b not in self._adj:
            raise UnknownNodeError(f"unknown node {b}")
        if b not in self._adj[a]:
            self._adj[a].add(b)
            self._adj[b].add(a)
            self._edge_count += 1

    def remove_node(self, v: int) -> None:
        """Delete v and every incident edge."""
        if v not in self._adj:
            raise UnknownNodeError(f"unknown node {v}")
        for w in self._adj[v]:
            self._adj[w].discard(v)
        self._edge_count -= len(self._adj[v])
        del self._adj[v]

    def remove_edge(self, a: int, b: int) -> None:
        """Delete edge {a, b}; both endpoints stay in the graph."""
        if a not in self._adj or b not in self._adj:
            raise UnknownNodeError(f"unknown node {a if a not in self._adj else b}")
        if b not in self._adj[a]:
            raise MissingEdgeError(f"no edge between {a} and {b}")
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self._edge_count -= 1

    # ----- queries -----

    def has_node(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, a: int, b: int) -> bool:
        return a in self._adj and b in self._adj[a]

    def degree(self, v: int) -> int:
        if v not in self._adj:
            raise UnknownNodeError(f"unknown node {v}")
        return len(self._adj[v])

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of v in ascending id order."""
        if v not in self._adj:
            raise UnknownNodeError(f"unknown node {v}")
        return sorted(self._adj[v])

    def nodes(self) -> list[int]:
        """All node ids, ascending."""
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        out = []
        for u in sorted(self._adj):
            for v in self._adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def mean_degree(self) -> float:
        if not self._adj:
            return 0.0
        return 2.0 * self._edge_count / len(self._adj)

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: set(nbrs) for v, nbrs in self._adj.items()}
        g._next_id = self._next_id
        g._edge_count = self._edge_count
        return g

    def audit(self) -> None:
        """Full-structure check: symmetry, no self-loops, consistent counts.

        Raises GraphError on the first violation found.
        """
        count = 0
        for v, nbrs in self._adj.items():
            if v in nbrs:
                raise GraphError(f"self-loop on node {v}")
            if v >= self._next_id:
                raise GraphError(f"node {v} at or above the id counter")
            for w in nbrs:
                if w not in self._adj:
                    raise GraphError(f"adjacency of {v} references unknown node {w}")
                if v not in self._adj[w]:
                    raise GraphError(f"asymmetric edge {v}->{w}")
            count += len(nbrs)
        if count != 2 * self._edge_count:
            raise GraphError(
                f"edge counter {self._edge_count} disagrees with adjacency ({count} half-edges)"
            )

    def csr(self) -> tuple[list[int], np.ndarray, np.ndarray]:
        """(ids, indptr, indices) view with nodes reindexed to 0..n-1 by id."""
        ids = sorted(self._adj)
        index = {v: i for i, v in enumerate(ids)}
        indptr = np.zeros(len(ids) + 1, dtype=np.int64)
        for i, v in enumerate(ids):
            indptr[i + 1] = indptr[i] + len(self._adj[v])
        indices = np.empty(int(indptr[-1]), dtype=np.int64)
        pos = 0
        for v in ids:
            for w in sorted(self._adj[v]):
                indices[pos] = index[w]
                pos += 1
        return ids, indptr, indices

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass
class ComponentPartition:
    """Disjoint connected components, each sorted, ordered by smallest member."""

    components: list[list[int]]
    largest_size: int


def connected_components(g: Graph) -> ComponentPartition:
    """Exact partition into connected components via iterative DFS."""
    seen: set[int] = set()
    comps: list[list[int]] = []
    adj = g._adj
    for v in g.nodes():
        if v in seen:
            continue
        stack = [v]
        seen.add(v)
        comp = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        comps.append(comp)
    largest = max((len(c) for c in comps), default=0)
    return ComponentPartition(comps, largest)


def largest_component_size(g: Graph) -> int:
    return connected_components(g).largest_size


def betweenness_centrality(g: Graph) -> dict[int, float]:
    """Unnormalized betweenness, each unordered pair counted once.

    For every node v, the sum over pairs s != t != v of the fraction of
    shortest s-t paths that pass through v.
    """
    n = g.node_count
    if n == 0:
        return {}
    ids, indptr, indices = g.csr()
    scores = _kernels.brandes_scores(indptr, indices, n)
    return {v: float(scores[i]) for i, v in enumerate(ids)}


def average_inverse_geodesic_length(g: Graph) -> float:
    """Mean of 1/d(u, v) over all unordered pairs; 0 for disconnected pairs.

    Summation uses math.fsum, so the result is the correctly-rounded value
    regardless of pair enumeration order.
    """
    n = g.node_count
    if n < 2:
        raise ValueError("average inverse geodesic length needs at least 2 nodes")
    ids, indptr, indices = g.csr()
    D = _kernels.all_pairs_distances(indptr, indices, n)
    terms = 1.0 / D[D > 0]
    # terms holds every unordered pair twice (D is symmetric); fsum of the
    # doubled multiset is exactly twice the fsum of the single one.
    return math.fsum(terms.tolist()) / (n * (n - 1))


def write_edge_list(g: Graph, path) -> None:
    """Write the `u v` per-line edge format; isolated nodes are not encoded."""
    with open(path, "w") as fh:
        fh.write(f"# nodes={g.node_count} edges={g.edge_count}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> Graph:
    """Parse the edge-list format written by write_edge_list."""
    g = Graph()
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-integer node id in {line!r}")
            if a == b:
                raise ValueError(f"{path}:{lineno}: self-loop {a}")
            if g.has_edge(a, b):
                raise ValueError(f"{path}:{lineno}: duplicate edge {a} {b}")
            g._ensure_node(a)
            g._ensure_node(b)
            g.add_edge(a, b)
    return g
