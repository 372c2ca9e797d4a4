"""Greedy O(m) construction of a simple graph with a prescribed JDM.

Every degree pair (k, l) is realized as a nearly regular block: each degree-k
vertex receives floor(J/D_k) or ceil(J/D_k) of the (k, l) edges. A per-class
rotation cursor decides which vertices take the extra edge, so residual
degrees inside a class never drift more than one apart.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from .errors import Infeasible, InternalInfeasibility
from .model import (
    DegreeVector,
    JointDegreeMatrix,
    SimpleGraph,
    canonical_degrees,
    require_graphical,
)


def near_regular_split(total: int, parts: int, cursor: int = 0) -> tuple[list[int], int]:
    """Split ``total`` units over ``parts`` as evenly as possible.

    The ``total % parts`` extra units go to parts ``cursor, cursor+1, ...``
    (wrapping), as if popping a queue and reinserting at the back.
    Returns the per-part counts and the advanced cursor.
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if total < 0:
        raise ValueError("total must be >= 0")
    base, extra = divmod(total, parts)
    counts = [base] * parts
    for i in range(extra):
        counts[(cursor + i) % parts] += 1
    return counts, (cursor + extra) % parts


def build_bipartite_block(x: Sequence[int], y: Sequence[int]) -> list[tuple[int, int]]:
    """Simple bipartite graph with left degrees ``x`` and right degrees ``y``.

    Round-robin: left vertices in order of decreasing demand each take their
    quota of right vertices from a rotating pointer, with right vertices ordered
    by decreasing demand. Works for nearly regular sequences; the result is
    audited and Infeasible is raised if it does not match.
    Edges are returned as (left index, right index).
    """
    if sum(x) != sum(y):
        raise Infeasible(f"side sums differ: {sum(x)} != {sum(y)}")
    if not y:
        if sum(x):
            raise Infeasible("right side is empty")
        return []
    if max(x, default=0) > len(y) or max(y) > len(x):
        raise Infeasible("a degree exceeds the opposite side size")
    left = sorted(range(len(x)), key=lambda i: -x[i])
    right = sorted(range(len(y)), key=lambda j: -y[j])
    edges = []
    pos = 0
    for i in left:
        for _ in range(x[i]):
            edges.append((i, right[pos]))
            pos = (pos + 1) % len(right)
    got = [0] * len(y)
    for _, j in edges:
        got[j] += 1
    if got != list(y) or len(set(edges)) != len(edges):
        raise Infeasible(f"round-robin cannot realize x={list(x)}, y={list(y)}")
    return edges


def havel_hakimi_block(x: Sequence[int]) -> list[tuple[int, int]]:
    """Simple graph on ``len(x)`` vertices with degree sequence ``x``."""
    if sum(x) % 2:
        raise Infeasible(f"odd degree sum in {list(x)}")
    heap = [(-d, i) for i, d in enumerate(x) if d > 0]
    heapq.heapify(heap)
    edges = []
    while heap:
        d, i = heapq.heappop(heap)
        d = -d
        if d > len(heap):
            raise Infeasible(f"degree sequence {list(x)} is not graphical")
        taken = [heapq.heappop(heap) for _ in range(d)]
        for dj, j in taken:
            edges.append((i, j) if i < j else (j, i))
            if dj + 1 < 0:
                heapq.heappush(heap, (dj + 1, j))
    return edges


@dataclass
class ResidualState:
    """Mutable bookkeeping of the greedy construction."""

    degrees: list[int]
    classes: dict[int, list[int]]  # degree -> vertex ids in queue order
    residual_degree: list[int] = field(default_factory=list)
    rotation_cursor: dict[int, int] = field(default_factory=dict)
    assigned_edges: list[tuple[int, int]] = field(default_factory=list)
    pending: dict[tuple[int, int], int] = field(default_factory=dict)

    def balanced(self) -> bool:
        for members in self.classes.values():
            res = [self.residual_degree[v] for v in members]
            if max(res) - min(res) > 1:
                return False
        return True

    def active_counts(self) -> dict[int, int]:
        return {
            k: sum(1 for v in members if self.residual_degree[v] > 0)
            for k, members in self.classes.items()
        }

    def feasible(self) -> bool:
        """Residual capacity conditions over the still-unprocessed pairs."""
        active = self.active_counts()
        for (k, l), c in self.pending.items():
            cap = comb(active[k], 2) if k == l else active[k] * active[l]
            if c > cap:
                return False
        return True


def _class_layout(dv: DegreeVector) -> tuple[list[int], dict[int, list[int]]]:
    degrees = canonical_degrees(dv)
    classes: dict[int, list[int]] = {}
    for v, k in enumerate(degrees):
        classes.setdefault(k, []).append(v)
    return degrees, classes


def greedy_construct(
    jdm: JointDegreeMatrix,
    *,
    on_iteration: Callable[[tuple[int, int], ResidualState], None] | None = None,
    check: bool = False,
) -> SimpleGraph:
    """Deterministically build a simple graph whose JDM is ``jdm``.

    Vertices are labeled canonically: highest degree first, ties by index.
    ``on_iteration`` is called after each degree-pair block with the pair and
    the live ResidualState. With ``check=True`` the balanced-degree and
    residual-feasibility invariants are asserted after every block.
    """
    dv = require_graphical(jdm)
    degrees, classes = _class_layout(dv)
    state = ResidualState(
        degrees=degrees,
        classes=classes,
        residual_degree=list(degrees),
        rotation_cursor={k: 0 for k in classes},
        pending=dict(jdm.items()),
    )
    # keys are (l, k) with l <= k; process k descending, then l descending
    order = sorted(jdm, key=lambda p: (p[1], p[0]), reverse=True)
    for l, k in order:
        count = state.pending.pop((l, k))
        members_k = classes[k]
        if k != l:
            members_l = classes[l]
            xs, state.rotation_cursor[k] = near_regular_split(
                count, len(members_k), state.rotation_cursor[k])
            ys, state.rotation_cursor[l] = near_regular_split(
                count, len(members_l), state.rotation_cursor[l])
            try:
                block = build_bipartite_block(xs, ys)
            except Infeasible as exc:
                raise InternalInfeasibility(str(exc)) from exc
            new_edges = [(members_k[i], members_l[j]) for i, j in block]
        else:
            xs, state.rotation_cursor[k] = near_regular_split(
                2 * count, len(members_k), state.rotation_cursor[k])
            try:
                block = havel_hakimi_block(xs)
            except Infeasible as exc:
                raise InternalInfeasibility(str(exc)) from exc
            new_edges = [(members_k[i], members_k[j]) for i, j in block]
        for u, v in new_edges:
            state.residual_degree[u] -= 1
            state.residual_degree[v] -= 1
            if state.residual_degree[u] < 0 or state.residual_degree[v] < 0:
                raise InternalInfeasibility(f"vertex over-assigned at block ({k}, {l})")
            state.assigned_edges.append((u, v))
        if check:
            if not state.balanced():
                raise InternalInfeasibility(f"balanced degree invariant broken after ({k}, {l})")
            if not state.feasible():
                raise InternalInfeasibility(f"residual JDM infeasible after ({k}, {l})")
        if on_iteration is not None:
            on_iteration((k, l), state)
    if any(state.residual_degree):
        raise InternalInfeasibility("residual degrees left after all blocks")
    try:
        return SimpleGraph(len(degrees), state.assigned_edges)
    except ValueError as exc:
        raise InternalInfeasibility(str(exc)) from exc
