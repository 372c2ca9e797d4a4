"""Brute-force ground truth for toy instances.

Deliberately independent of the graphicality checker, the constructor and the
chain code: realizations are found by exhaustive backtracking, and swap
adjacency is computed directly on edge sets.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import LimitExceeded, TooLarge

DEFAULT_LIMIT = 10**6
MAX_EDGES = 12

Edge = tuple[int, int]


@dataclass
class RealizationSet:
    jdm: Mapping[tuple[int, int], int]
    degrees: list[int]
    graphs: list[frozenset[Edge]]
    swap_adjacency: list[list[int]] | None = None

    def __len__(self) -> int:
        return len(self.graphs)

    def index(self) -> dict[frozenset[Edge], int]:
        return {g: i for i, g in enumerate(self.graphs)}


def _vertex_layout(jdm: Mapping[tuple[int, int], int]) -> list[int] | None:
    endpoints: Counter[int] = Counter()
    for (k, l), c in jdm.items():
        endpoints[k] += c
        endpoints[l] += c
    degrees = []
    for k in sorted(endpoints, reverse=True):
        if endpoints[k] % k:
            return None
        degrees.extend([k] * (endpoints[k] // k))
    return degrees


def enumerate_realizations(
    jdm: Mapping[tuple[int, int], int],
    limit: int = DEFAULT_LIMIT,
    max_edges: int | None = MAX_EDGES,
) -> RealizationSet:
    """All labeled simple graphs on the canonical vertex set whose JDM is ``jdm``.

    The canonical vertex set lists vertices by decreasing degree. ``max_edges``
    guards against explosion (pass None to lift it).
    """
    target = Counter()
    for (k, l), c in jdm.items():
        if c:
            target[(min(k, l), max(k, l))] += c
    m = sum(target.values())
    if max_edges is not None and m > max_edges:
        raise TooLarge(f"{m} edges exceeds the enumeration guard of {max_edges}")
    degrees = _vertex_layout(target)
    if degrees is None:
        return RealizationSet(dict(target), [], [])
    n = len(degrees)
    residual = list(degrees)
    remaining = dict(target)
    chosen: list[Edge] = []
    found: list[frozenset[Edge]] = []

    def pair_key(u, v):
        a, b = degrees[u], degrees[v]
        return (a, b) if a <= b else (b, a)

    def fill(u: int, start: int) -> None:
        # give vertex u its remaining edges among vertices w >= start, w > u
        if residual[u] == 0:
            advance(u + 1)
            return
        for w in range(start, n):
            if residual[w] == 0:
                continue
            key = pair_key(u, w)
            if remaining.get(key, 0) == 0:
                continue
            remaining[key] -= 1
            residual[u] -= 1
            residual[w] -= 1
            chosen.append((u, w))
            fill(u, w + 1)
            chosen.pop()
            residual[w] += 1
            residual[u] += 1
            remaining[key] += 1

    def advance(u: int) -> None:
        while u < n and residual[u] == 0:
            u += 1
        if u == n:
            if all(c == 0 for c in remaining.values()):
                found.append(frozenset(chosen))
                if len(found) > limit:
                    raise LimitExceeded(f"more than {limit} realizations")
            return
        fill(u, u + 1)

    advance(0)
    return RealizationSet(dict(target), degrees, found)


def swap_neighbors(graph: frozenset[Edge], degrees: list[int]) -> set[frozenset[Edge]]:
    """Simple graphs reachable by moving one edge endpoint onto a same-degree vertex.

    Edges (v1, w1) and (v2, w2) with deg(v1) == deg(v2) become (v2, w1) and (v1, w2).
    """
    edges = sorted(graph)
    out = set()
    for i, a in enumerate(edges):
        for j, b in enumerate(edges):
            if i == j:
                continue
            for v1, w1 in (a, a[::-1]):
                for v2, w2 in (b, b[::-1]):
                    if v1 == v2 or degrees[v1] != degrees[v2]:
                        continue
                    n1 = (min(v2, w1), max(v2, w1))
                    n2 = (min(v1, w2), max(v1, w2))
                    if v2 == w1 or v1 == w2 or n1 == n2:
                        continue
                    rest = graph - {a, b}
                    if n1 in rest or n2 in rest:
                        continue
                    new = rest | {n1, n2}
                    if new != graph:
                        out.add(frozenset(new))
    return out


def build_swap_adjacency(rs: RealizationSet) -> list[list[int]]:
    idx = rs.index()
    adj = []
    for g in rs.graphs:
        nbrs = sorted(idx[h] for h in swap_neighbors(g, rs.degrees) if h in idx)
        adj.append(nbrs)
    rs.swap_adjacency = adj
    return adj


def _bfs(adj: list[list[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def swap_graph_connected(rs: RealizationSet) -> tuple[bool, int]:
    """Connectivity and diameter of the single-swap graph over realizations."""
    if not rs.graphs:
        raise ValueError("empty realization set")
    adj = rs.swap_adjacency if rs.swap_adjacency is not None else build_swap_adjacency(rs)
    diameter = 0
    for s in range(len(adj)):
        dist = _bfs(adj, s)
        if min(dist) < 0:
            return False, -1
        diameter = max(diameter, max(dist))
    return True, diameter


def exact_edge_means(rs: RealizationSet) -> dict[Edge, Fraction]:
    """Fraction of realizations containing each vertex pair (all pairs listed)."""
    if not rs.graphs:
        raise ValueError("empty realization set")
    n = len(rs.degrees)
    counts: Counter[Edge] = Counter()
    for g in rs.graphs:
        counts.update(g)
    total = len(rs.graphs)
    return {
        (u, v): Fraction(counts.get((u, v), 0), total)
        for u in range(n) for v in range(u + 1, n)
    }
