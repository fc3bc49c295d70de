"""Quartets and the quartet system induced by a ternary map.

A quartet is an unordered split of four taxa into two pairs, written
``a b | c d``.  A ternary map induces quartets two ways:

* a 4-subset whose four inner values split 2-2 yields the quartet whose
  first pair is the two taxa omitted by the equal-valued triples;
* a 4-subset whose four inner values agree (value ``m``) yields a quartet
  for every outside taxon ``e`` that resolves one of its three pairings:
  both within-pair triples through ``e`` keep the value ``m`` while all
  four cross-pair triples through ``e`` share a single other value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .core import TaxonSet, TernaryMap

__all__ = [
    "Quartet",
    "QuartetSystem",
    "generate_quartets",
    "is_complete",
    "is_saturated",
    "is_thin",
    "is_transitive",
    "non_thin_quadruples",
    "pairings",
    "resolved_quartet",
]


@dataclass(frozen=True)
class Quartet:
    """Two disjoint pairs of taxa, stored in a canonical order."""

    first: tuple[str, str]
    second: tuple[str, str]

    def __post_init__(self) -> None:
        a = tuple(sorted(self.first))
        b = tuple(sorted(self.second))
        if a > b:
            a, b = b, a
        if len({*a, *b}) != 4:
            raise ValueError(f"a quartet needs four distinct taxa, got {a + b}")
        object.__setattr__(self, "first", a)
        object.__setattr__(self, "second", b)

    @classmethod
    def of(cls, a: str, b: str, c: str, d: str) -> "Quartet":
        """The quartet pairing a with b against c with d."""
        return cls((a, b), (c, d))

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.first + self.second)

    def __str__(self) -> str:
        return f"{self.first[0]} {self.first[1]} | {self.second[0]} {self.second[1]}"


def pairings(
    a: str, b: str, c: str, d: str
) -> tuple[tuple[tuple[str, str], tuple[str, str]], ...]:
    """The three ways to split four taxa into two pairs."""
    return (
        ((a, b), (c, d)),
        ((a, c), (b, d)),
        ((a, d), (b, c)),
    )


class QuartetSystem:
    """A set of quartets over a fixed taxon set."""

    __slots__ = ("taxa", "members")

    def __init__(self, taxa: TaxonSet, members: Iterable[Quartet]) -> None:
        self.taxa = taxa
        self.members = frozenset(members)
        for q in self.members:
            for t in q.support:
                taxa.require(t)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, quartet: object) -> bool:
        return quartet in self.members

    def __iter__(self) -> Iterator[Quartet]:
        return iter(sorted(self.members, key=lambda q: (q.first, q.second)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuartetSystem):
            return NotImplemented
        return self.taxa.names == other.taxa.names and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.taxa.names, self.members))

    def __repr__(self) -> str:
        return f"QuartetSystem(n={len(self.taxa)}, quartets={len(self.members)})"

    def on_support(self, quad: Iterable[str]) -> tuple[Quartet, ...]:
        """The quartets whose four taxa are exactly the given 4-subset."""
        wanted = frozenset(quad)
        return tuple(q for q in self if q.support == wanted)

    def to_text(self) -> str:
        return "".join(f"{q}\n" for q in self)


def _inner_values(tmap: TernaryMap, quad: tuple[str, ...]) -> dict[tuple[str, ...], str]:
    """Value of each of the four triples inside a 4-subset, keyed by the omitted pair's complement."""
    return {tri: tmap.triple_value(tri) for tri in combinations(sorted(quad), 3)}


def resolved_quartet(
    tmap: TernaryMap, quad: Iterable[str], e: str
) -> Quartet | None:
    """The quartet on a constant 4-subset that the outside taxon e resolves.

    Returns None when e resolves no pairing.  Raises ValueError when the
    four triples inside the 4-subset do not share one value, or when e
    lies inside the 4-subset.
    """
    quad = tuple(sorted(set(quad)))
    if len(quad) != 4:
        raise ValueError(f"expected four distinct taxa, got {quad!r}")
    tmap.taxa.require(e)
    if e in quad:
        raise ValueError(f"resolver {e!r} must lie outside the 4-subset")
    inner = set(_inner_values(tmap, quad).values())
    if len(inner) != 1:
        raise ValueError(
            f"4-subset {' '.join(quad)} is not constant: values {sorted(inner)}"
        )
    (m,) = inner
    for (p1, p2), (q1, q2) in pairings(*quad):
        if tmap.triple_value((p1, p2, e)) != m:
            continue
        if tmap.triple_value((q1, q2, e)) != m:
            continue
        cross = {
            tmap.triple_value((p, q, e))
            for p in (p1, p2)
            for q in (q1, q2)
        }
        if len(cross) == 1 and m not in cross:
            return Quartet((p1, p2), (q1, q2))
    return None


def generate_quartets(tmap: TernaryMap) -> QuartetSystem:
    """All quartets induced by a ternary map.

    Assumes the map passes the basic checks (symmetry is structural; every
    4-subset carries at most two values, and two only in a 2-2 split).
    4-subsets that violate that assumption induce nothing here.
    """
    found: set[Quartet] = set()
    names = tmap.taxa.names
    for quad in combinations(names, 4):
        inner = _inner_values(tmap, quad)
        by_value: dict[str, list[tuple[str, ...]]] = {}
        for tri, val in inner.items():
            by_value.setdefault(val, []).append(tri)
        if len(by_value) == 2:
            groups = list(by_value.values())
            if len(groups[0]) != 2:
                continue
            # The two triples sharing a value omit one taxon each; those
            # two omitted taxa form one side of the quartet.
            quad_set = set(quad)
            omitted = [(quad_set - set(tri)).pop() for tri in groups[0]]
            pair = tuple(sorted(omitted))
            other = tuple(sorted(quad_set - set(pair)))
            found.add(Quartet(pair, other))
        elif len(by_value) == 1:
            outside = [t for t in names if t not in quad]
            seen: set[Quartet] = set()
            for e in outside:
                q = resolved_quartet(tmap, quad, e)
                if q is not None:
                    seen.add(q)
                    if len(seen) == 3:
                        break
            found.update(seen)
    return QuartetSystem(tmap.taxa, found)


def non_thin_quadruples(system: QuartetSystem) -> tuple[tuple[str, ...], ...]:
    """4-subsets carrying two or more quartets of the system."""
    per_quad: dict[frozenset[str], int] = {}
    for q in system.members:
        per_quad[q.support] = per_quad.get(q.support, 0) + 1
    heavy = [quad for quad, count in per_quad.items() if count >= 2]
    return tuple(sorted(tuple(sorted(quad)) for quad in heavy))


def is_thin(system: QuartetSystem) -> bool:
    """True when no 4-subset carries more than one quartet."""
    return not non_thin_quadruples(system)


def is_complete(system: QuartetSystem) -> bool:
    """True when every 4-subset carries exactly one quartet."""
    per_quad: dict[frozenset[str], int] = {}
    for q in system.members:
        per_quad[q.support] = per_quad.get(q.support, 0) + 1
    total = len(tuple(combinations(system.taxa.names, 4)))
    return len(per_quad) == total and all(c == 1 for c in per_quad.values())


def is_transitive(system: QuartetSystem) -> bool:
    """True when, for each pair, being paired against it is transitive.

    Whenever a b | c e and a b | d e are members with c, d, e distinct,
    a b | c d must be a member too.
    """
    partners: dict[tuple[str, str], dict[str, set[str]]] = {}
    for q in system.members:
        for pair, (u, v) in ((q.first, q.second), (q.second, q.first)):
            adj = partners.setdefault(pair, {})
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    for pair, adj in partners.items():
        for e, neigh in adj.items():
            for c, d in combinations(sorted(neigh), 2):
                if d not in adj.get(c, ()):
                    return False
    return True


def is_saturated(system: QuartetSystem) -> bool:
    """True when every member quartet extends past every fifth taxon.

    For a member with pairs {p1, p2} and {q1, q2} and any other taxon e,
    each of the four choices (i, j) must satisfy: p_i e | q1 q2 is a
    member, or p1 p2 | q_j e is a member.
    """
    members = system.members
    for q in members:
        p1, p2 = q.first
        q1, q2 = q.second
        for e in system.taxa:
            if e in q.support:
                continue
            for pi in (p1, p2):
                for qj in (q1, q2):
                    if Quartet((pi, e), (q1, q2)) in members:
                        continue
                    if Quartet((p1, p2), (qj, e)) in members:
                        continue
                    return False
    return True
