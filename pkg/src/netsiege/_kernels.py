"""CSR kernels for the two expensive graph computations.

Both kernels operate on a compressed-sparse-row view of the adjacency
structure (``indptr``/``indices`` over nodes reindexed 0..n-1) so they can be
JIT-compiled with numba. The same function bodies run unmodified as plain
Python when numba is not importable; they are then orders of magnitude
slower but produce identical results, so every test exercises the same code
path the simulations use.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda func: func


@njit(cache=True)
def brandes_scores(indptr, indices, n):
    """Betweenness via Brandes' dependency accumulation, O(VE).

    Returns unnormalized scores with each unordered source/target pair
    counted once (the ordered-pair accumulation is halved at the end).
    Predecessors are not stored: on unweighted graphs an edge (v, w) lies on
    a shortest-path DAG from s exactly when dist[v] + 1 == dist[w], so the
    back-propagation pass re-scans each node's incident edges instead.
    """
    scores = np.zeros(n, dtype=np.float64)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n, dtype=np.float64)
    delta = np.empty(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        cnt = 0
        while head < tail:
            v = queue[head]
            head += 1
            order[cnt] = v
            cnt += 1
            for ei in range(indptr[v], indptr[v + 1]):
                w = indices[ei]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for i in range(cnt - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for ei in range(indptr[w], indptr[w + 1]):
                v = indices[ei]
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            scores[w] += delta[w]
    return scores * 0.5


@njit(cache=True)
def all_pairs_distances(indptr, indices, n):
    """BFS from every node; D[i, j] = hop count, -1 when unreachable."""
    D = np.full((n, n), -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        D[s, s] = 0
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = D[s, v]
            for ei in range(indptr[v], indptr[v + 1]):
                w = indices[ei]
                if D[s, w] < 0:
                    D[s, w] = dv + 1
                    queue[tail] = w
                    tail += 1
    return D


def warmup():
    """Force JIT compilation of both kernels on a 2-node graph.

    Called once before forking worker processes so children inherit the
    compiled machine code instead of each paying the compile cost.
    """
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    brandes_scores(indptr, indices, 2)
    all_pairs_distances(indptr, indices, 2)
