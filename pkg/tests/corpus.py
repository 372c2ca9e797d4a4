"""Small-instance corpora shared by the property and acceptance tests."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from jdmgraph.model import JointDegreeMatrix, SimpleGraph, extract_jdm

TRIANGLE = JointDegreeMatrix({(2, 2): 3})
PATH4 = JointDegreeMatrix({(1, 2): 2, (2, 2): 1})


def to_simple(g: nx.Graph) -> SimpleGraph:
    mapping = {v: i for i, v in enumerate(g.nodes())}
    return SimpleGraph(len(mapping), [(mapping[u], mapping[v]) for u, v in g.edges()])


@lru_cache(maxsize=None)
def atlas_graphs(max_nodes: int = 6) -> tuple[SimpleGraph, ...]:
    """Every non-isomorphic simple graph on 1..max_nodes vertices with at least one edge."""
    return tuple(
        to_simple(g) for g in nx.graph_atlas_g()
        if 0 < g.number_of_nodes() <= max_nodes and g.number_of_edges() > 0
    )


@lru_cache(maxsize=None)
def atlas_jdms() -> tuple[JointDegreeMatrix, ...]:
    seen = {}
    for g in atlas_graphs():
        j = extract_jdm(g)
        seen.setdefault(j, None)
    return tuple(seen)


def _layout_size(entries) -> int:
    totals = {}
    for (k, l), c in entries.items():
        totals[k] = totals.get(k, 0) + c
        totals[l] = totals.get(l, 0) + c
    return sum(-(-t // k) for k, t in totals.items())


@lru_cache(maxsize=None)
def perturbed_jdms(count: int = 200, seed: int = 20240601) -> tuple[JointDegreeMatrix, ...]:
    """Random +-1 / new-entry perturbations of atlas JDMs, at most 8 edges, at most 8 vertices."""
    rng = random.Random(seed)
    base = [j for j in atlas_jdms() if sum(j.values()) <= 8]
    existing = set(atlas_jdms())
    out = {}
    while len(out) < count:
        entries = dict(rng.choice(base).items())
        for _ in range(rng.randint(1, 2)):
            move = rng.random()
            if move < 0.4 and entries:
                key = rng.choice(sorted(entries))
                entries[key] += 1
            elif move < 0.7 and entries:
                key = rng.choice(sorted(entries))
                entries[key] -= 1
                if entries[key] == 0:
                    del entries[key]
            else:
                k, l = sorted((rng.randint(1, 5), rng.randint(1, 5)))
                entries[(k, l)] = entries.get((k, l), 0) + 1
        if not entries or sum(entries.values()) > 8 or _layout_size(entries) > 8:
            continue
        j = JointDegreeMatrix(entries)
        if j in existing:
            continue
        out.setdefault(j, None)
    return tuple(out)


def full_corpus() -> list[JointDegreeMatrix]:
    return list(atlas_jdms()) + list(perturbed_jdms())
