"""Edge-list and JDM text formats.

Edge list: one ``u v`` pair per line, whitespace separated, ``#`` starts a
comment line. Tokens are arbitrary strings mapped to dense indices in
first-seen order.

JDM file: one ``k l count`` line per entry, positive integers, either order
accepted on read, written with k <= l.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO

from .errors import ParseError, SimplicityViolation
from .model import JointDegreeMatrix, Pseudograph, SimpleGraph


def _lines(source) -> Iterable[tuple[int, str]]:
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            yield from enumerate(fh.read().splitlines(), start=1)
    else:
        yield from enumerate(source.read().splitlines(), start=1)


def read_edge_list(source, *, pseudo: bool = False) -> tuple[SimpleGraph | Pseudograph, list[str]]:
    """Parse an edge list. Returns the graph and the index -> label list.

    In simple mode (default) self-pairs and repeated pairs raise
    SimplicityViolation, a ParseError subclass.
    """
    labels: dict[str, int] = {}
    edges = []
    seen = set()
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ParseError(f"expected two vertex tokens, got {line!r}", lineno)
        ids = []
        for tok in parts[:2]:
            if tok not in labels:
                labels[tok] = len(labels)
            ids.append(labels[tok])
        u, v = ids
        if not pseudo:
            if u == v:
                raise SimplicityViolation(f"self-loop {parts[0]} {parts[1]} in simple mode", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise SimplicityViolation(f"duplicate edge {parts[0]} {parts[1]} in simple mode", lineno)
            seen.add(key)
        edges.append((u, v))
    names = list(labels)
    if pseudo:
        return Pseudograph(len(names), edges), names
    return SimpleGraph(len(names), edges), names


def write_edge_list(graph: SimpleGraph | Pseudograph, out: TextIO, labels: list[str] | None = None) -> None:
    for u, v in graph.sorted_edges():
        if labels is None:
            out.write(f"{u} {v}\n")
        else:
            out.write(f"{labels[u]} {labels[v]}\n")


def read_jdm(source) -> JointDegreeMatrix:
    entries = {}
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'k l count', got {line!r}", lineno)
        try:
            k, l, c = (int(p) for p in parts)
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        if k <= 0 or l <= 0 or c <= 0:
            raise ParseError(f"degrees and counts must be positive in {line!r}", lineno)
        key = (min(k, l), max(k, l))
        if key in entries:
            raise ParseError(f"duplicate degree pair {key}", lineno)
        entries[key] = c
    return JointDegreeMatrix(entries)


def write_jdm(jdm: JointDegreeMatrix, out: TextIO) -> None:
    for (k, l), c in jdm.items():
        out.write(f"{k} {l} {c}\n")


def format_jdm(jdm: JointDegreeMatrix) -> str:
    return "".join(f"{k} {l} {c}\n" for (k, l), c in jdm.items())
