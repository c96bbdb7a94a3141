"""Exact and constructive baselines for coloring and max-cut.

exact_coloring is a DSATUR-ordered backtracking search: exact for the
K-colorability decision, fast on the benchmark family, and the reference
everything else is checked against. brute_force_maxcut enumerates
partitions (n <= 24). The King's-graph closed forms give a constructive
proper 4-coloring and the best-known (row-stripe) cut value.
"""

from __future__ import annotations

import time

import numpy as np

from .graph import Graph

__all__ = [
    "OracleTimeout",
    "exact_coloring",
    "constructive_kings_coloring",
    "brute_force_maxcut",
    "stripe_cut_value",
]


class OracleTimeout(Exception):
    """Raised when the backtracking search exceeds its time budget."""


def exact_coloring(
    graph: Graph,
    k: int,
    node_limit: int = 10_000,
    time_budget: float | None = None,
) -> list[int] | None:
    """Return a proper k-coloring if one exists, else None.

    Backtracking over a DSATUR order (most saturated, then highest degree).
    Exact but potentially slow on adversarial graphs, hence the node limit
    and optional wall-clock budget.
    """
    if k < 1:
        raise ValueError("need at least one color")
    if graph.n > node_limit:
        raise ValueError(f"graph has {graph.n} nodes, above node_limit={node_limit}")
    if graph.n == 0:
        return []

    adj = [[] for _ in range(graph.n)]
    for i, j, _ in graph.edges:
        adj[i].append(j)
        adj[j].append(i)
    degree = [len(a) for a in adj]

    colors = [-1] * graph.n
    neighbor_colors = [set() for _ in range(graph.n)]
    deadline = None if time_budget is None else time.monotonic() + time_budget

    def pick_node():
        best, best_key = -1, None
        for v in range(graph.n):
            if colors[v] != -1:
                continue
            key = (len(neighbor_colors[v]), degree[v])
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def assign(v, c):
        colors[v] = c
        touched = []
        for u in adj[v]:
            if colors[u] == -1 and c not in neighbor_colors[u]:
                neighbor_colors[u].add(c)
                touched.append(u)
        return touched

    def unassign(v, c, touched):
        colors[v] = -1
        for u in touched:
            neighbor_colors[u].discard(c)

    def backtrack(colored, used):
        if deadline is not None and time.monotonic() > deadline:
            raise OracleTimeout(f"exceeded {time_budget}s searching for a {k}-coloring")
        if colored == graph.n:
            return True
        v = pick_node()
        # symmetry breaking: at most one brand-new color is worth trying
        for c in range(min(used + 1, k)):
            if c in neighbor_colors[v]:
                continue
            touched = assign(v, c)
            if backtrack(colored + 1, max(used, c + 1)):
                return True
            unassign(v, c, touched)
        return False

    if backtrack(0, 0):
        return colors
    return None


def constructive_kings_coloring(side: int) -> list[int]:
    """Proper 4-coloring of the King's graph: color = 2*(row % 2) + (col % 2)."""
    if side < 1:
        raise ValueError("side must be >= 1")
    return [2 * (r % 2) + (c % 2) for r in range(side) for c in range(side)]


def brute_force_maxcut(graph: Graph, chunk: int = 1 << 16) -> tuple[float, np.ndarray]:
    """Exhaustive weighted max-cut for n <= 24.

    Fixes node 0 on side 0 to halve the enumeration. Returns (best cut
    weight, one maximizing 0/1 label vector).
    """
    if graph.n > 24:
        raise ValueError(f"brute force capped at 24 nodes, got {graph.n}")
    if graph.n == 0:
        return 0.0, np.zeros(0, dtype=np.int64)
    n_masks = 1 << max(graph.n - 1, 0)
    best_cut, best_mask = -1.0, 0
    # node 0 stays on side 0; mask bit b assigns node b+1
    si = graph.ei - 1
    sj = graph.ej - 1
    for start in range(0, n_masks, chunk):
        masks = np.arange(start, min(start + chunk, n_masks), dtype=np.int64)
        cuts = np.zeros(len(masks))
        for e in range(graph.edge_count):
            bi = (masks >> si[e]) & 1 if si[e] >= 0 else 0
            bj = (masks >> sj[e]) & 1
            cuts += graph.w[e] * (bi != bj)
        k = int(np.argmax(cuts))
        if cuts[k] > best_cut:
            best_cut, best_mask = float(cuts[k]), int(masks[k])
    labels = np.zeros(graph.n, dtype=np.int64)
    for v in range(1, graph.n):
        labels[v] = (best_mask >> (v - 1)) & 1
    return best_cut, labels


def stripe_cut_value(side: int) -> int:
    """Row-parity cut of the King's graph: all vertical plus both diagonal
    edge families, side*(side-1) + 2*(side-1)^2. Best-known, not proven
    optimal beyond the exhaustively checked small sides."""
    if side < 2:
        raise ValueError("side must be >= 2")
    return side * (side - 1) + 2 * (side - 1) ** 2
