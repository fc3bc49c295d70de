"""Partition checks that decide whether a ternary map encodes a tree.

Symmetry and the repeated-argument rule hold for every TernaryMap by
construction, so the checks here cover the two counting conditions and the
resolver condition:

* 4-subset check: the four values inside a 4-subset are either all equal or
  split two against two;
* 5-subset check: the ten values inside a 5-subset never split five against
  five;
* resolver check: every 4-subset whose four inner values agree is resolved
  by some outside taxon (see quartets.resolved_quartet).

A map is accepted as a metric when the 4- and 5-subset checks pass.  The
resolver check is reported separately: together with the others it marks the
maps encoded by binary trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable

from .core import TernaryMap
from .quartets import resolved_quartet

__all__ = [
    "K5Type",
    "MetricReport",
    "PartitionProfile",
    "Violation",
    "check_condition3",
    "check_condition4",
    "check_star",
    "classify_k5",
    "is_binary_encodable",
    "partition_profile",
    "verify_metric",
]


@dataclass(frozen=True)
class PartitionProfile:
    """How often each symbol occurs among the triples inside one subset."""

    subset: tuple[str, ...]
    counts: tuple[tuple[str, int], ...]

    def values(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.counts)

    def is_partitioned(self, a: int, b: int) -> bool:
        """Exactly two symbols whose multiplicities are a and b in either order."""
        if len(self.counts) != 2:
            return False
        return sorted(count for _, count in self.counts) == sorted((a, b))

    def describe(self) -> str:
        return " ".join(f"{sym}={count}" for sym, count in self.counts)


def partition_profile(tmap: TernaryMap, subset: Iterable[str]) -> PartitionProfile:
    """Count the symbols on all triples inside a subset of at least three taxa."""
    members = tuple(sorted(set(subset)))
    if len(members) < 3:
        raise ValueError(f"a partition profile needs at least three taxa, got {len(members)}")
    for t in members:
        tmap.taxa.require(t)
    tally: dict[str, int] = {}
    for tri in combinations(members, 3):
        sym = tmap.triple_value(tri)
        tally[sym] = tally.get(sym, 0) + 1
    return PartitionProfile(members, tuple(sorted(tally.items())))


@dataclass(frozen=True)
class Violation:
    """One subset on which a check fails; condition is '3', '4', or '*'."""

    condition: str
    subset: tuple[str, ...]
    detail: str

    @property
    def line(self) -> str:
        return f"COND {self.condition} SUBSET {' '.join(self.subset)} DETAIL {self.detail}"


def check_condition3(tmap: TernaryMap, *, fail_fast: bool = False) -> tuple[Violation, ...]:
    """4-subsets whose inner values are neither constant nor split 2-2."""
    found = []
    for quad in tmap.taxa.subsets(4):
        profile = partition_profile(tmap, quad)
        if len(profile.counts) == 1 or profile.is_partitioned(2, 2):
            continue
        found.append(Violation("3", quad, "values " + profile.describe()))
        if fail_fast:
            break
    return tuple(found)


def check_condition4(tmap: TernaryMap, *, fail_fast: bool = False) -> tuple[Violation, ...]:
    """5-subsets whose ten inner values split 5-5."""
    found = []
    for five in tmap.taxa.subsets(5):
        profile = partition_profile(tmap, five)
        if profile.is_partitioned(5, 5):
            found.append(Violation("4", five, "values " + profile.describe()))
            if fail_fast:
                break
    return tuple(found)


def check_star(
    tmap: TernaryMap, *, strict: bool = True, fail_fast: bool = False
) -> tuple[Violation, ...]:
    """Constant 4-subsets that no outside taxon resolves.

    With strict=True a resolver must show the exact pattern of
    quartets.resolved_quartet; with strict=False it only needs to turn the
    surrounding 5-subset into a 4-6 partition.  On maps that pass the
    4-subset check the two readings agree.
    """
    found = []
    names = tmap.taxa.names
    for quad in tmap.taxa.subsets(4):
        inner = {tmap.triple_value(tri) for tri in combinations(quad, 3)}
        if len(inner) != 1:
            continue
        (value,) = inner
        outside = [e for e in names if e not in quad]
        if strict:
            resolved = any(resolved_quartet(tmap, quad, e) is not None for e in outside)
        else:
            resolved = any(
                partition_profile(tmap, quad + (e,)).is_partitioned(4, 6) for e in outside
            )
        if resolved:
            continue
        if outside:
            detail = f"constant value {value} with no resolving taxon"
        else:
            detail = f"constant value {value} and no taxa outside the 4-subset"
        found.append(Violation("*", quad, detail))
        if fail_fast:
            break
    return tuple(found)


@dataclass(frozen=True)
class MetricReport:
    """Result of verify_metric; the resolver check never affects is_metric."""

    violations: tuple[Violation, ...]
    star_checked: bool = False
    star_violations: tuple[Violation, ...] = ()

    @property
    def is_metric(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        return "".join(v.line + "\n" for v in self.violations + self.star_violations)


def verify_metric(
    tmap: TernaryMap,
    *,
    include_star: bool = False,
    strict_star: bool = True,
    fail_fast: bool = False,
) -> MetricReport:
    """Run the 4- and 5-subset checks, and optionally the resolver check."""
    violations = check_condition3(tmap, fail_fast=fail_fast)
    if not (fail_fast and violations):
        violations += check_condition4(tmap, fail_fast=fail_fast)
    star: tuple[Violation, ...] = ()
    if include_star:
        star = check_star(tmap, strict=strict_star, fail_fast=fail_fast)
    return MetricReport(violations, include_star, star)


def is_binary_encodable(tmap: TernaryMap, *, strict_star: bool = True) -> bool:
    """True when the map passes all checks including the resolver check."""
    report = verify_metric(tmap, include_star=True, strict_star=strict_star)
    return report.is_metric and not report.star_violations


class K5Type(Enum):
    """Shape of a 5-taxon map, read off the edge-colored complete graph.

    Each pair of taxa is an edge colored by the value of the complementary
    triple.  The per-color degree sequences pin down one of five shapes;
    anything else contains a 4-subset violation.
    """

    TYPE1 = "two triangles and a 4-cycle"
    TYPE2 = "two 5-cycles"
    TYPE3 = "a 4-cycle and its complement"
    TYPE4 = "a triangle and its complement"
    TYPE5 = "one color everywhere"
    INVALID = "no tree shape"


_K5_PROFILES = {
    ((4, 4, 4, 4, 4),): K5Type.TYPE5,
    ((2, 2, 2, 2, 2), (2, 2, 2, 2, 2)): K5Type.TYPE2,
    ((2, 2, 2, 2, 0), (4, 2, 2, 2, 2)): K5Type.TYPE3,
    ((2, 2, 2, 0, 0), (4, 4, 2, 2, 2)): K5Type.TYPE4,
    ((2, 2, 2, 0, 0), (2, 2, 2, 0, 0), (2, 2, 2, 2, 0)): K5Type.TYPE1,
}


def classify_k5(tmap: TernaryMap, five: Iterable[str]) -> K5Type:
    """Classify the restriction of a map to five taxa by its colored-graph shape."""
    members = tuple(sorted(set(five)))
    if len(members) != 5:
        raise ValueError(f"expected five distinct taxa, got {len(members)}")
    for t in members:
        tmap.taxa.require(t)
    degrees: dict[str, dict[str, int]] = {}
    for u, v in combinations(members, 2):
        tri = tuple(t for t in members if t != u and t != v)
        sym = tmap.triple_value(tri)
        per_vertex = degrees.setdefault(sym, dict.fromkeys(members, 0))
        per_vertex[u] += 1
        per_vertex[v] += 1
    profile = tuple(
        sorted(tuple(sorted(d.values(), reverse=True)) for d in degrees.values())
    )
    return _K5_PROFILES.get(profile, K5Type.INVALID)
