"""JDM configuration model and the endpoint-swap Markov chains.

A configuration holds, for every degree class k, the k*D_k mini-vertices
(k per degree-k vertex) and the k*D_k class-k edge endpoints, plus a perfect
matching between them. Edge i owns endpoints 2*i and 2*i + 1, so the partner
of endpoint e is ``e ^ 1``. Collapsing the matching gives a pseudograph whose
JDM is fixed by construction.

Chain A applies every proposed swap and walks over pseudographs. Chain B
rejects swaps that would create a self-loop or multi-edge and walks over
simple graphs.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .construct import greedy_construct
from .errors import EmptyGraph, UnknownDegreeClass
from .model import JointDegreeMatrix, Pseudograph, SimpleGraph, edge_count, require_graphical


class ChainKind(enum.Enum):
    A = "A"  # pseudographs, no rejection
    B = "B"  # simple graphs, rejects loops and multi-edges

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, value) -> ChainKind:
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


@dataclass(frozen=True)
class SamplerSchedule:
    burn_in: int | None = None  # None means 5m
    gap: int = 1
    sample_count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.burn_in is not None and self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.gap < 1:
            raise ValueError("gap must be >= 1")
        if self.sample_count < 0:
            raise ValueError("sample_count must be >= 0")

    def resolved_burn_in(self, m: int) -> int:
        return 5 * m if self.burn_in is None else self.burn_in


@dataclass
class DegreeClass:
    degree: int
    mini_vertices: list[int]
    endpoints: list[int]


class Configuration:
    """Perfect matching between mini-vertices and edge endpoints, per degree class."""

    def __init__(self, vertex_count, degrees, endpoint_class, endpoint_mini, mini_vertex):
        self.vertex_count = vertex_count
        self.degrees = degrees
        self.endpoint_class = endpoint_class
        self.endpoint_mini = endpoint_mini
        self.mini_vertex = mini_vertex
        self.classes: dict[int, DegreeClass] = {}
        for e, k in enumerate(endpoint_class):
            self.classes.setdefault(k, DegreeClass(k, [], [])).endpoints.append(e)
        for mv, v in enumerate(mini_vertex):
            k = degrees[v]
            self.classes.setdefault(k, DegreeClass(k, [], [])).mini_vertices.append(mv)
        self.classes = dict(sorted(self.classes.items()))

    @property
    def edge_count(self) -> int:
        return len(self.endpoint_class) // 2

    def endpoint_vertex(self, e: int) -> int:
        return self.mini_vertex[self.endpoint_mini[e]]

    def edge_registry(self) -> list[tuple[int, int]]:
        return [(2 * i, 2 * i + 1) for i in range(self.edge_count)]

    def copy(self) -> Configuration:
        clone = object.__new__(Configuration)
        clone.vertex_count = self.vertex_count
        clone.degrees = self.degrees
        clone.endpoint_class = self.endpoint_class
        clone.endpoint_mini = list(self.endpoint_mini)
        clone.mini_vertex = self.mini_vertex
        clone.classes = self.classes
        return clone

    def validate(self) -> None:
        for k, cls in self.classes.items():
            if len(cls.mini_vertices) != len(cls.endpoints):
                raise AssertionError(f"class {k}: size mismatch")
            matched = sorted(self.endpoint_mini[e] for e in cls.endpoints)
            if matched != sorted(cls.mini_vertices):
                raise AssertionError(f"class {k}: not a perfect matching")


def build_configuration(graph: SimpleGraph | Pseudograph) -> Configuration:
    """Configuration whose collapse is exactly ``graph`` (same labels, same edge order)."""
    if not graph.edges:
        raise EmptyGraph("graph has no edges")
    degrees = graph.degrees()
    mini_vertex = []
    first_mini = []
    for v, d in enumerate(degrees):
        first_mini.append(len(mini_vertex))
        mini_vertex.extend([v] * d)
    used = [0] * graph.vertex_count
    endpoint_class = []
    endpoint_mini = []
    for u, v in graph.sorted_edges():
        for x in (u, v):
            endpoint_class.append(degrees[x])
            endpoint_mini.append(first_mini[x] + used[x])
            used[x] += 1
    return Configuration(graph.vertex_count, degrees, endpoint_class, endpoint_mini, mini_vertex)


def collapse(config: Configuration) -> Pseudograph:
    vm = config.mini_vertex
    em = config.endpoint_mini
    return Pseudograph(
        config.vertex_count,
        ((vm[em[2 * i]], vm[em[2 * i + 1]]) for i in range(config.edge_count)),
    )


def apply_swap(config: Configuration, e1: int, e2: int) -> Configuration:
    """New configuration with the mini-vertices of endpoints e1 and e2 exchanged."""
    if config.endpoint_class[e1] != config.endpoint_class[e2]:
        raise ValueError("endpoints belong to different degree classes")
    out = config.copy()
    out.endpoint_mini[e1], out.endpoint_mini[e2] = out.endpoint_mini[e2], out.endpoint_mini[e1]
    return out


def feasible_swap_count(config: Configuration, k: int) -> int:
    """Unordered class-k endpoint pairs whose swap leaves the collapsed graph simple.

    Brute force: every pair is applied and the whole collapsed graph is checked.
    """
    if k not in config.classes:
        raise UnknownDegreeClass(f"no degree class {k}")
    eps = config.classes[k].endpoints
    count = 0
    for a in range(len(eps)):
        for b in range(a + 1, len(eps)):
            if collapse(apply_swap(config, eps[a], eps[b])).is_simple():
                count += 1
    return count


class Chain:
    """Mutable chain state with O(1) expected-time steps.

    Owns a configuration plus the collapsed graph's adjacency multiplicities.
    Random numbers come from ``rng`` (a numpy Generator) in buffered blocks.
    """

    _BLOCK = 1 << 15

    def __init__(self, config: Configuration, kind: ChainKind | str, rng: np.random.Generator):
        self.config = config
        self.kind = ChainKind.parse(kind)
        self._reject = self.kind is ChainKind.B
        self._rng = rng
        self._buf: list[float] = []
        self._bi = 0
        n = config.vertex_count
        self.vertex = [config.endpoint_vertex(e) for e in range(len(config.endpoint_class))]
        self.adj: list[dict[int, int]] = [dict() for _ in range(n)]
        for i in range(config.edge_count):
            self._inc(self.vertex[2 * i], self.vertex[2 * i + 1])
        if self._reject and not self.is_simple():
            raise ValueError("chain B must start from a simple graph")
        self.class_endpoints = {k: c.endpoints for k, c in config.classes.items()}
        self.class_pos = [0] * len(config.endpoint_class)
        for eps in self.class_endpoints.values():
            for i, e in enumerate(eps):
                self.class_pos[e] = i
        self.steps = 0
        self.proposals = 0
        self.accepted = 0
        self.tracked: dict[tuple[int, int], int] | None = None
        self.state: bytearray | None = None

    def _inc(self, u, v):
        a = self.adj
        a[u][v] = a[u].get(v, 0) + 1
        if u != v:
            a[v][u] = a[v].get(u, 0) + 1

    def _dec(self, u, v):
        a = self.adj
        c = a[u][v] - 1
        if c:
            a[u][v] = c
            if u != v:
                a[v][u] = c
        else:
            del a[u][v]
            if u != v:
                del a[v][u]

    def is_simple(self) -> bool:
        return all(c == 1 and v != u for u, nb in enumerate(self.adj) for v, c in nb.items())

    def track(self, pairs) -> bytearray:
        """Maintain a 0/1 occupancy byte per pair in ``pairs`` (canonical u < v)."""
        self.tracked = {(u, v) if u <= v else (v, u): i for i, (u, v) in enumerate(pairs)}
        self.state = bytearray(len(self.tracked))
        for (u, v), i in self.tracked.items():
            self.state[i] = 1 if self.adj[u].get(v, 0) else 0
        return self.state

    def _uniform(self) -> float:
        if self._bi >= len(self._buf):
            self._buf = self._rng.random(self._BLOCK).tolist()
            self._bi = 0
        x = self._buf[self._bi]
        self._bi += 1
        return x

    def step(self) -> bool:
        """One lazy transition. Returns True when the collapsed graph changed."""
        self.steps += 1
        if self._uniform() < 0.5:
            return False
        self.proposals += 1
        vertex = self.vertex
        e1 = int(self._uniform() * len(vertex))
        eps = self.class_endpoints[self.config.endpoint_class[e1]]
        size = len(eps)
        r = int(self._uniform() * (size - 1)) if size > 1 else 0
        if size < 2:
            self.accepted += 1  # nothing to swap with; a trivial move
            return False
        if r >= self.class_pos[e1]:
            r += 1
        e2 = eps[r]
        return self.swap(e1, e2)

    def swap(self, e1: int, e2: int) -> bool:
        """Propose swapping endpoints e1 and e2; returns True if the graph changed."""
        vertex = self.vertex
        v1 = vertex[e1]
        v2 = vertex[e2]
        if v1 == v2 or (e1 ^ 1) == e2:
            self._commit(e1, e2)
            return False
        w1 = vertex[e1 ^ 1]
        w2 = vertex[e2 ^ 1]
        if w1 == w2:
            self._commit(e1, e2)
            return False
        adj = self.adj
        if self._reject:
            if v2 == w1 or v1 == w2 or w1 in adj[v2] or w2 in adj[v1]:
                return False
        self._dec(v1, w1)
        self._dec(v2, w2)
        self._inc(v2, w1)
        self._inc(v1, w2)
        vertex[e1] = v2
        vertex[e2] = v1
        self._commit(e1, e2)
        if self.tracked is not None:
            t = self.tracked
            st = self.state
            for a, b in ((v1, w1), (v2, w2), (v2, w1), (v1, w2)):
                i = t.get((a, b) if a <= b else (b, a))
                if i is not None:
                    st[i] = 1 if adj[a].get(b, 0) else 0
        return True

    def _commit(self, e1, e2):
        em = self.config.endpoint_mini
        em[e1], em[e2] = em[e2], em[e1]
        self.accepted += 1

    def run(self, steps: int) -> None:
        step = self.step
        for _ in range(steps):
            step()

    def edges(self) -> list[tuple[int, int]]:
        v = self.vertex
        out = []
        for i in range(len(v) // 2):
            a, b = v[2 * i], v[2 * i + 1]
            out.append((a, b) if a <= b else (b, a))
        return out

    def graph(self) -> SimpleGraph | Pseudograph:
        if self.kind is ChainKind.B:
            return SimpleGraph(self.config.vertex_count, self.edges())
        return Pseudograph(self.config.vertex_count, self.edges())


def transition_step(config: Configuration, kind: ChainKind | str, rng: np.random.Generator) -> Configuration:
    """Apply one lazy transition to a copy of ``config``."""
    chain = Chain(config.copy(), kind, rng)
    chain.step()
    return chain.config


def make_rng(seed: int, replica: int | None = None) -> np.random.Generator:
    """PCG64 stream for ``seed``; replicas get independent child streams."""
    if replica is None:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, replica])))


def seed_chain(jdm: JointDegreeMatrix, kind, rng: np.random.Generator) -> Chain:
    start = greedy_construct(jdm)
    return Chain(build_configuration(start), kind, rng)


def sample(
    jdm: JointDegreeMatrix,
    kind: ChainKind | str,
    schedule: SamplerSchedule,
    *,
    replica: int | None = None,
    progress: bool = False,
) -> Iterator[SimpleGraph | Pseudograph]:
    """Yield ``schedule.sample_count`` graphs from the chain started at the greedy seed.

    Runs burn_in steps, then emits one graph after every ``gap`` further steps.
    Rejected and lazy steps count toward the schedule.
    """
    require_graphical(jdm)
    chain = seed_chain(jdm, kind, make_rng(schedule.seed, replica))
    chain.run(schedule.resolved_burn_in(edge_count(jdm)))
    total = schedule.sample_count
    for i in range(total):
        chain.run(schedule.gap)
        if progress and (i + 1) % max(1, total // 20) == 0:
            print(f"\rsample {i + 1}/{total}", end="", file=sys.stderr, flush=True)
        yield chain.graph()
    if progress and total:
        print(file=sys.stderr)
