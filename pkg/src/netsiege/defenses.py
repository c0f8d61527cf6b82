"""Defender policies: exogenous replenishment and within-component adaptation.

Replenishment recruits new nodes after an attack; adaptation rewires the
survivors (splitting vulnerable hubs into rings or cliques, or shedding
degree by delegation). The two phases see different information:
replenished nodes arrive from outside and contact any survivors they find,
so their edges may land in several components, while adaptation is driven
by the survivors' local knowledge and never reaches beyond the rewiring
node's own component.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .generate import preferential_targets
from .graph import Graph

REPLENISH_KINDS = ("none", "random", "scale_free")
ADAPT_KINDS = ("none", "ring", "clique", "delegate", "delegate_then_clique")


@dataclass(frozen=True)
class DefenseSpec:
    """Strategy selectors plus their numeric knobs.

    vuln_threshold None means "twice the current mean degree", recomputed at
    each adaptation phase; target_mean_degree_k None means "mean degree of
    the initial network", resolved once by the game engine.
    """

    replenish_kind: str = "none"
    adapt_kind: str = "none"
    group_size_n: int = 12
    vuln_threshold: float | None = None
    target_mean_degree_k: float | None = None
    delegation_steps: int = 1
    immunize_rounds: int = 0

    def validate(self) -> None:
        if self.replenish_kind not in REPLENISH_KINDS:
            raise ValueError(
                f"unknown replenishment {self.replenish_kind!r}, expected one of {REPLENISH_KINDS}"
            )
        if self.adapt_kind not in ADAPT_KINDS:
            raise ValueError(
                f"unknown adaptation {self.adapt_kind!r}, expected one of {ADAPT_KINDS}"
            )
        if self.group_size_n < 3:
            raise ValueError(f"group size must be >= 3, got {self.group_size_n}")
        if self.vuln_threshold is not None and self.vuln_threshold < 1:
            raise ValueError(f"vulnerability threshold must be >= 1, got {self.vuln_threshold}")
        if self.target_mean_degree_k is not None and self.target_mean_degree_k <= 0:
            raise ValueError(f"target mean degree must be > 0, got {self.target_mean_degree_k}")
        if self.delegation_steps < 1:
            raise ValueError(f"delegation steps must be >= 1, got {self.delegation_steps}")
        if self.immunize_rounds < 0:
            raise ValueError(f"immunize rounds must be >= 0, got {self.immunize_rounds}")


def vulnerability_threshold(g: Graph, spec: DefenseSpec) -> float:
    """Degree above which a node is deemed vulnerable (strictly greater)."""
    if spec.vuln_threshold is not None:
        return spec.vuln_threshold
    return 2.0 * g.mean_degree


@dataclass
class Group:
    kind: str  # "ring" or "clique"
    members: set[int]


class GroupRegistry:
    """Tracks disjoint ring/clique memberships across rounds.

    Membership blocks recruitment into another group and re-splitting. A
    group dissolves once fewer than two members survive; its last survivor
    becomes unaffiliated again.
    """

    def __init__(self):
        self.groups: list[Group] = []
        self._member_of: dict[int, Group] = {}

    def is_member(self, v: int) -> bool:
        return v in self._member_of

    def add_group(self, kind: str, members: list[int]) -> None:
        for v in members:
            if v in self._member_of:
                raise ValueError(f"node {v} already belongs to a group")
        group = Group(kind, set(members))
        self.groups.append(group)
        for v in members:
            self._member_of[v] = group

    def remove_destroyed(self, destroyed) -> None:
        """Prune destroyed members; dissolve groups left with < 2 members."""
        touched = []
        for v in destroyed:
            group = self._member_of.pop(v, None)
            if group is not None:
                group.members.discard(v)
                touched.append(group)
        for group in touched:
            if len(group.members) < 2 and group in self.groups:
                for v in group.members:
                    self._member_of.pop(v, None)
                group.members.clear()
                self.groups.remove(group)

    def audit(self) -> None:
        seen: set[int] = set()
        for group in self.groups:
            if len(group.members) < 2:
                raise AssertionError(f"undersized group of {len(group.members)}")
            overlap = seen & group.members
            if overlap:
                raise AssertionError(f"nodes {sorted(overlap)} appear in two groups")
            seen |= group.members
        if seen != set(self._member_of):
            raise AssertionError("membership index out of sync with group list")


# ----- replenishment -----


def replenish_random(g: Graph, count: int, k: float, rng: random.Random) -> list[int]:
    """Add `count` nodes, each joined to every survivor with probability p.

    The i-th new node (counting earlier arrivals as survivors) uses
    p = k / (N - r + i), so p rises toward k/(N - 1) as a parity
    replenishment of r nodes proceeds and a new node's expected degree
    stays close to k. A node that draws no edges gets one edge to a
    uniform survivor, so replenished nodes are never born isolated.
    """
    if k <= 0:
        raise ValueError(f"target mean degree must be > 0, got {k}")
    new_ids: list[int] = []
    for _ in range(count):
        survivors = g.nodes()
        v = g.add_node()
        if not survivors:
            new_ids.append(v)
            continue
        p = k / len(survivors)
        for u in survivors:
            if rng.random() < p:
                g.add_edge(v, u)
        if g.degree(v) == 0:
            g.add_edge(v, survivors[rng.randrange(len(survivors))])
        new_ids.append(v)
    return new_ids


def replenish_scale_free(
    g: Graph, count: int, edges_per_node: int, rng: random.Random
) -> list[int]:
    """Add `count` nodes attached by the initial generator's rule: each new
    node draws edges_per_node distinct survivors with probability
    proportional to current degree."""
    if edges_per_node < 1:
        raise ValueError(f"edges_per_node must be >= 1, got {edges_per_node}")
    new_ids: list[int] = []
    for _ in range(count):
        survivors = g.nodes()
        if not survivors:
            # degenerate fallback: chain the new nodes to each other
            v = g.add_node()
            if new_ids:
                g.add_edge(v, new_ids[-1])
            new_ids.append(v)
            continue
        targets = preferential_targets(g, survivors, edges_per_node, rng)
        v = g.add_node()
        for t in targets:
            g.add_edge(v, t)
        new_ids.append(v)
    return new_ids


# ----- adaptation -----


def _reachable_from(g: Graph, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    adj = g._adj
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _vulnerable_nodes(
    g: Graph, reg: GroupRegistry, threshold: float, rng: random.Random
) -> list[int]:
    """Ungrouped nodes above the threshold, most threatened first (degree
    descending, ties in random order)."""
    vulnerable = [v for v in g.nodes() if g.degree(v) > threshold and not reg.is_member(v)]
    rng.shuffle(vulnerable)
    vulnerable.sort(key=lambda v: -g.degree(v))
    return vulnerable


def _recruit(
    g: Graph,
    reg: GroupRegistry,
    founder: int,
    needed: int,
    pool: list[int],
    component: set[int],
) -> list[int] | None:
    """Pick `needed` recruits: fresh nodes first (pool order, founder's
    component only), then the founder's lowest-degree ungrouped neighbours.
    Returns None when not enough candidates exist (no partial groups)."""
    recruits: list[int] = []
    for v in list(pool):
        if len(recruits) == needed:
            break
        if v != founder and v in component and not reg.is_member(v):
            recruits.append(v)
            pool.remove(v)
    if len(recruits) < needed:
        taken = set(recruits)
        candidates = [
            w for w in g.neighbors(founder) if w not in taken and not reg.is_member(w)
        ]
        candidates.sort(key=lambda w: (g.degree(w), w))
        for w in candidates:
            if len(recruits) == needed:
                break
            recruits.append(w)
    if len(recruits) < needed:
        return None
    return recruits


def _form_group(
    g: Graph, reg: GroupRegistry, founder: int, recruits: list[int], kind: str
) -> None:
    """Wire founder + recruits into a ring or clique supernode.

    Recruits relinquish every existing link; the founder's external edges
    are then shared round-robin over all members (max count difference 1),
    and the members are wired in a cycle (ring) or completely (clique).
    """
    members = [founder] + recruits
    n = len(members)
    for v in recruits:
        for w in g.neighbors(v):
            g.remove_edge(v, w)
    externals = g.neighbors(founder)
    for j, w in enumerate(externals):
        g.remove_edge(founder, w)
        g.add_edge(members[j % n], w)
    if kind == "ring":
        for i in range(n):
            g.add_edge(members[i], members[(i + 1) % n])
    else:
        for i in range(n):
            for j in range(i + 1, n):
                g.add_edge(members[i], members[j])
    reg.add_group(kind, members)


def _adapt_split(
    g: Graph,
    reg: GroupRegistry,
    spec: DefenseSpec,
    fresh: list[int],
    rng: random.Random,
    kind: str,
) -> None:
    threshold = vulnerability_threshold(g, spec)
    pool = [v for v in fresh if g.has_node(v)]
    for founder in _vulnerable_nodes(g, reg, threshold, rng):
        # earlier splits this phase may have recruited this node or shed its degree
        if reg.is_member(founder) or g.degree(founder) <= threshold:
            continue
        component = _reachable_from(g, founder)
        recruits = _recruit(g, reg, founder, spec.group_size_n - 1, pool, component)
        if recruits is None:
            continue
        _form_group(g, reg, founder, recruits, kind)


def adapt_rings(
    g: Graph, reg: GroupRegistry, spec: DefenseSpec, fresh: list[int], rng: random.Random
) -> None:
    """Split each vulnerable node into a cycle of group_size_n nodes."""
    _adapt_split(g, reg, spec, fresh, rng, "ring")


def adapt_cliques(
    g: Graph, reg: GroupRegistry, spec: DefenseSpec, fresh: list[int], rng: random.Random
) -> None:
    """Split each vulnerable node into a complete graph of group_size_n nodes."""
    _adapt_split(g, reg, spec, fresh, rng, "clique")


def adapt_delegate(g: Graph, spec: DefenseSpec, rng: random.Random) -> None:
    """Degree shedding: each vulnerable node hands neighbours off to deputies.

    One rewire picks an ordered pair of neighbours (a, b) with a-b not yet
    an edge, connects a-b, and drops v-b. Edge and node counts are
    conserved exactly; connectivity is preserved because b stays reachable
    through a.
    """
    threshold = vulnerability_threshold(g, spec)
    eligible = [v for v in g.nodes() if g.degree(v) > threshold]
    for v in eligible:
        for _ in range(spec.delegation_steps):
            nbrs = g.neighbors(v)
            if len(nbrs) < 2:
                break
            pairs = [
                (a, b) for a in nbrs for b in nbrs if a != b and not g.has_edge(a, b)
            ]
            if not pairs:
                break
            a, b = pairs[rng.randrange(len(pairs))]
            g.add_edge(a, b)
            g.remove_edge(v, b)


def adapt_delegate_then_clique(
    g: Graph, reg: GroupRegistry, spec: DefenseSpec, fresh: list[int], rng: random.Random
) -> None:
    """Wartime compound phase: delegation pass, then clique formation.

    The game engine calls adapt_delegate alone for the pre-hostility
    immunization window; this compound runs from the first attack round on.
    """
    adapt_delegate(g, spec, rng)
    adapt_cliques(g, reg, spec, fresh, rng)
