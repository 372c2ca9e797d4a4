"""Synthetic JDM whose (k, l) edge means cover i/20 for i = 1..20.

Degrees in ``k_degrees`` get 4 vertices each and degrees in ``l_degrees`` get
5, so every cross pair has 20 vertex slots and J[k, l] = i gives mean i/20.
The remaining endpoints of each class are completed either with degree-1
attachments or, in dense mode, by packing same-group pairs first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InfeasibleSpec
from .model import JointDegreeMatrix, is_graphical


@dataclass(frozen=True)
class SynthSpec:
    k_degrees: tuple[int, ...] = (20, 21, 22, 23, 24)
    l_degrees: tuple[int, ...] = (25, 26, 27, 28)
    k_count: int = 4
    l_count: int = 5
    fill: str = "degree1"  # or "dense"

    def validate(self) -> None:
        if len(self.k_degrees) * len(self.l_degrees) < 20:
            raise InfeasibleSpec("need at least 20 (k, l) cells")
        if self.k_count * self.l_count != 20:
            raise InfeasibleSpec("k_count * l_count must be 20")
        if set(self.k_degrees) & set(self.l_degrees) or 1 in self.k_degrees + self.l_degrees:
            raise InfeasibleSpec("degree groups must be disjoint and exclude 1")
        if self.fill not in ("degree1", "dense"):
            raise InfeasibleSpec(f"unknown fill strategy {self.fill!r}")


def generate_synthetic(spec: SynthSpec = SynthSpec()) -> JointDegreeMatrix:
    spec.validate()
    counts = {k: spec.k_count for k in spec.k_degrees}
    counts.update({l: spec.l_count for l in spec.l_degrees})
    entries: dict[tuple[int, int], int] = {}
    value = 1
    for k in sorted(spec.k_degrees):
        for l in sorted(spec.l_degrees):
            if value > 20:
                break
            entries[(k, l)] = value
            value += 1
    deficit = {d: d * c for d, c in counts.items()}
    for (k, l), c in entries.items():
        deficit[k] -= c
        deficit[l] -= c
    if spec.fill == "dense":
        for group in (sorted(spec.k_degrees), sorted(spec.l_degrees)):
            for i, a in enumerate(group):
                for b in group[i + 1:]:
                    take = min(deficit[a], deficit[b], counts[a] * counts[b])
                    if take > 0:
                        entries[(a, b)] = take
                        deficit[a] -= take
                        deficit[b] -= take
                take = min(deficit[a] // 2, comb(counts[a], 2))
                if take > 0:
                    entries[(a, a)] = take
                    deficit[a] -= 2 * take
    for d, rest in deficit.items():
        if rest < 0:
            raise InfeasibleSpec(f"degree {d} over-allocated by {-rest}")
        if rest:
            entries[(1, d)] = rest
    jdm = JointDegreeMatrix(entries)
    report = is_graphical(jdm)
    if not report.graphical:
        raise InfeasibleSpec("; ".join(v.detail for v in report.violations))
    return jdm
