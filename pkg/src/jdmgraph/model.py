"""Graph containers, joint degree matrices and graphicality tests."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import EmptyGraph, NonIntegerDegreeCount, NotGraphical

Pair = tuple[int, int]


def _canon(u: int, v: int) -> Pair:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Labeled undirected graph without self-loops or multi-edges."""

    vertex_count: int
    edges: frozenset[Pair]

    def __init__(self, vertex_count: int, edges: Iterable[Pair] = ()):
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            p = _canon(u, v)
            if p in canon:
                raise ValueError(f"duplicate edge {p}")
            canon.add(p)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(canon))

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def sorted_edges(self) -> list[Pair]:
        return sorted(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Pseudograph:
    """Labeled undirected multigraph; self-loops allowed and count 2 toward degree."""

    vertex_count: int
    edges: tuple[Pair, ...]

    def __init__(self, vertex_count: int, edges: Iterable[Pair] = ()):
        canon = []
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            canon.append(_canon(u, v))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(set(self.edges)) == len(self.edges)

    def to_simple(self) -> SimpleGraph:
        return SimpleGraph(self.vertex_count, self.edges)

    def sorted_edges(self) -> list[Pair]:
        return list(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


class DegreeVector(Mapping[int, int]):
    """Counts D[k] of degree-k vertices. Zero counts are never stored."""

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        data = {}
        for k, c in items:
            k, c = int(k), int(c)
            if k <= 0:
                raise ValueError(f"degree must be positive, got {k}")
            if c < 0:
                raise ValueError(f"negative count for degree {k}")
            if c:
                data[k] = c
        self._data = dict(sorted(data.items()))

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> DegreeVector:
        return cls(Counter(d for d in degrees if d > 0))

    def __getitem__(self, k: int) -> int:
        return self._data[k]

    def get(self, k, default=0):
        return self._data.get(k, default)

    def __iter__(self) -> Iterator[int]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, DegreeVector):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._data.items()))

    def __repr__(self) -> str:
        return f"DegreeVector({self._data})"

    @property
    def vertex_count(self) -> int:
        return sum(self._data.values())

    def sequence(self) -> list[int]:
        """Expanded degree sequence in non-increasing order."""
        seq = []
        for k in sorted(self._data, reverse=True):
            seq.extend([k] * self._data[k])
        return seq

    def probabilities(self) -> dict[int, Fraction]:
        n = self.vertex_count
        return {k: Fraction(c, n) for k, c in self._data.items()}


class JointDegreeMatrix(Mapping[Pair, int]):
    """Symmetric edge counts between degree classes, keyed by (k, l) with k <= l.

    Either key orientation may be used for lookups. Zero entries are dropped.
    """

    def __init__(self, entries: Mapping[Pair, int] | Iterable[tuple[Pair, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[Pair, int] = {}
        for (k, l), c in items:
            k, l, c = int(k), int(l), int(c)
            if k <= 0 or l <= 0:
                raise ValueError(f"degrees must be positive, got ({k}, {l})")
            if c < 0:
                raise ValueError(f"negative count at ({k}, {l})")
            key = _canon(k, l)
            if key in data:
                raise ValueError(f"duplicate entry for degree pair {key}")
            if c:
                data[key] = c
        self._data = dict(sorted(data.items()))

    def __getitem__(self, key: Pair) -> int:
        return self._data[_canon(*key)]

    def get(self, key, default=0):
        return self._data.get(_canon(*key), default)

    def __contains__(self, key) -> bool:
        try:
            return _canon(*key) in self._data
        except TypeError:
            return False

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, JointDegreeMatrix):
            return self._data == other._data
        if isinstance(other, Mapping):
            try:
                return self == JointDegreeMatrix(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._data.items()))

    def __repr__(self) -> str:
        return f"JointDegreeMatrix({self._data})"

    def degrees(self) -> list[int]:
        """Distinct degrees appearing in any key, ascending."""
        return sorted({k for pair in self._data for k in pair})

    def endpoint_totals(self) -> dict[int, int]:
        """Number of degree-k endpoints: 2*J[k,k] + sum over l != k of J[k,l]."""
        totals: Counter[int] = Counter()
        for (k, l), c in self._data.items():
            totals[k] += c
            totals[l] += c
        return dict(sorted(totals.items()))

    def probabilities(self) -> dict[Pair, Fraction]:
        m = edge_count(self)
        return {key: Fraction(c, m) for key, c in self._data.items()}


@dataclass(frozen=True)
class Violation:
    condition: str  # "integrality" | "cross-capacity" | "self-capacity"
    pair: Pair
    detail: str


@dataclass(frozen=True)
class GraphicalityReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def graphical(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.graphical


def edge_count(jdm: JointDegreeMatrix) -> int:
    return sum(jdm.values())


def derive_degree_vector(jdm: JointDegreeMatrix) -> DegreeVector:
    """Recover D[k] = (J[k,k] + sum_l J[k,l]) / k.

    Raises NonIntegerDegreeCount for the first degree whose endpoint total is
    not divisible by the degree.
    """
    counts = {}
    for k, endpoints in jdm.endpoint_totals().items():
        q, r = divmod(endpoints, k)
        if r:
            raise NonIntegerDegreeCount(k, endpoints)
        counts[k] = q
    return DegreeVector(counts)


def is_graphical(jdm: JointDegreeMatrix) -> GraphicalityReport:
    """Check the three realizability conditions and report every failure."""
    violations = []
    D = {}
    for k, endpoints in jdm.endpoint_totals().items():
        q, r = divmod(endpoints, k)
        if r:
            violations.append(Violation(
                "integrality", (k, k),
                f"degree {k} has {endpoints} endpoints, not a multiple of {k}",
            ))
        else:
            D[k] = q
    for (k, l), c in jdm.items():
        if k not in D or l not in D:
            continue
        if k != l:
            cap = D[k] * D[l]
            if c > cap:
                violations.append(Violation(
                    "cross-capacity", (k, l),
                    f"J[{k},{l}] = {c} > D[{k}]*D[{l}] = {cap}",
                ))
        else:
            cap = comb(D[k], 2)
            if c > cap:
                violations.append(Violation(
                    "self-capacity", (k, k),
                    f"J[{k},{k}] = {c} > C(D[{k}], 2) = C({D[k]}, 2) = {cap}",
                ))
    return GraphicalityReport(tuple(violations))


def require_graphical(jdm: JointDegreeMatrix) -> DegreeVector:
    report = is_graphical(jdm)
    if not report.graphical:
        raise NotGraphical(report)
    return derive_degree_vector(jdm)


def erdos_gallai_check(dv: DegreeVector | Iterable[int]) -> bool:
    """Erdos-Gallai test on the expanded degree sequence."""
    if isinstance(dv, DegreeVector):
        seq = dv.sequence()
    else:
        seq = sorted((d for d in dv if d > 0), reverse=True)
    if sum(seq) % 2:
        return False
    n = len(seq)
    # suffix sums of min(d_i, k) computed directly; n is small wherever this is called
    prefix = 0
    for k in range(1, n + 1):
        prefix += seq[k - 1]
        rhs = k * (k - 1) + sum(min(d, k) for d in seq[k:])
        if prefix > rhs:
            return False
    return True


def extract_jdm(graph: SimpleGraph | Pseudograph) -> JointDegreeMatrix:
    if not graph.edges:
        raise EmptyGraph("graph has no edges")
    deg = graph.degrees()
    counts: Counter[Pair] = Counter(_canon(deg[u], deg[v]) for u, v in graph.edges)
    return JointDegreeMatrix(counts)


def slot_count(dv: Mapping[int, int], k: int, l: int) -> int:
    """Number of labeled vertex pairs with degrees (k, l)."""
    if k == l:
        return comb(dv.get(k, 0), 2)
    return dv.get(k, 0) * dv.get(l, 0)


def edge_mean(jdm: JointDegreeMatrix, k: int, l: int) -> Fraction:
    """Probability that a fixed (k, l) vertex pair is an edge of a uniform realization."""
    dv = require_graphical(jdm)
    slots = slot_count(dv, k, l)
    if slots == 0:
        return Fraction(0)
    return Fraction(jdm.get((k, l), 0), slots)


def canonical_degrees(dv: DegreeVector) -> list[int]:
    """Per-vertex degrees for the canonical labeling: highest degree first."""
    return dv.sequence()
