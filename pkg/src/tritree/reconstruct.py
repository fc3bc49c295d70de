"""Bottom-up reconstruction of a colored tree from a ternary map.

Two taxa merge under a symbol m when some triple through both takes the value
m and every other triple takes m through one exactly when it does through the
other.  In a map that encodes a tree, the classes of this relation with two
or more members are exactly the pseudo-cherries: the groups of all leaves
sharing one interior vertex, whose color is the class symbol.

Reconstruction contracts one class into a composite leaf taxon, recurses on
the reduced map, and then expands the composite back.  Expansion looks at the
vertex the composite leaf hangs from: when that vertex already carries the
class symbol, the class members attach directly to it (the class vertex kept
other neighbors besides its leaves); otherwise the composite leaf turns into
a fresh interior vertex with the class symbol (the class vertex had been
suppressed in the reduced tree).  Both ways no two adjacent interior vertices
ever share a color.  The candidate tree is certified at the end by
re-encoding it, so every map that is not an encoding is rejected, at the
latest, there.

Composite taxa are named ``@1``, ``@2``, ... which is why ``@`` is banned as
the first character of input taxa.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, count
from typing import Callable, Iterable, Iterator

from .core import TaxonSet, TernaryMap, build_ternary, check_identifier
from .tree import ColoredTree

__all__ = [
    "ContractionStep",
    "EquivalenceClasses",
    "NotAMetricError",
    "contract_class",
    "equivalence_classes",
    "merge_symbol",
    "reconstruct_tree",
]


class NotAMetricError(ValueError):
    """The ternary map is not the encoding of any discriminating colored tree."""


def merge_symbol(tmap: TernaryMap, x: str, y: str) -> str | None:
    """The symbol under which two taxa merge, or None when there is none.

    At most one symbol can pass for a map satisfying the 4-subset check; two
    passing symbols therefore raise NotAMetricError.
    """
    tmap.taxa.require(x)
    tmap.taxa.require(y)
    if x == y:
        raise ValueError("merging is defined for two distinct taxa")
    others = [t for t in tmap.taxa if t != x and t != y]
    candidates = sorted({tmap.triple_value((x, y, z)) for z in others})
    other_pairs = list(combinations(others, 2))
    passing = [
        m
        for m in candidates
        if all(
            (tmap.triple_value((x, u, v)) == m) == (tmap.triple_value((y, u, v)) == m)
            for u, v in other_pairs
        )
    ]
    if len(passing) > 1:
        raise NotAMetricError(
            f"taxa {x} and {y} merge under more than one symbol: {' '.join(passing)}"
        )
    return passing[0] if passing else None


@dataclass(frozen=True)
class EquivalenceClasses:
    """Merge classes covering all taxa; singletons carry the symbol None."""

    classes: tuple[tuple[str, ...], ...]
    symbols: tuple[str | None, ...]

    def nontrivial(self) -> tuple[tuple[tuple[str, ...], str], ...]:
        """The classes with two or more members, as (members, symbol) pairs."""
        return tuple(
            (members, symbol)
            for members, symbol in zip(self.classes, self.symbols)
            if len(members) >= 2
        )


def equivalence_classes(tmap: TernaryMap) -> EquivalenceClasses:
    """Group the taxa by the merge relation.

    Raises NotAMetricError when merging fails to be an equivalence with one
    symbol per class: some pair in a connected group does not merge, or two
    pairs in one group merge under different symbols.  Maps that encode
    trees never trigger either.
    """
    names = tmap.taxa.names
    pair_symbol: dict[tuple[str, str], str] = {}
    adjacent: dict[str, set[str]] = {x: set() for x in names}
    for x, y in combinations(names, 2):
        symbol = merge_symbol(tmap, x, y)
        if symbol is not None:
            pair_symbol[(x, y)] = symbol
            adjacent[x].add(y)
            adjacent[y].add(x)

    classes: list[tuple[str, ...]] = []
    symbols: list[str | None] = []
    placed: set[str] = set()
    for start in names:
        if start in placed:
            continue
        group = {start}
        frontier = [start]
        while frontier:
            frontier = [u for v in frontier for u in adjacent[v] if u not in group]
            group.update(frontier)
        placed.update(group)
        members = tuple(sorted(group))
        if len(members) == 1:
            classes.append(members)
            symbols.append(None)
            continue
        seen: dict[str, tuple[str, str]] = {}
        for u, v in combinations(members, 2):
            got = pair_symbol.get((u, v))
            if got is None:
                raise NotAMetricError(
                    f"merging is not transitive: {u} and {v} belong to one merge group "
                    "but do not merge"
                )
            seen.setdefault(got, (u, v))
        if len(seen) > 1:
            (s1, (u1, v1)), (s2, (u2, v2)) = sorted(seen.items())[:2]
            raise NotAMetricError(
                f"one merge group mixes symbols: {u1} and {v1} merge under {s1} "
                f"while {u2} and {v2} merge under {s2}"
            )
        classes.append(members)
        symbols.append(next(iter(seen)))
    return EquivalenceClasses(tuple(classes), tuple(symbols))


@dataclass(frozen=True)
class ContractionStep:
    """One reduction: a merge class replaced by a composite taxon."""

    members: tuple[str, ...]
    symbol: str
    new_taxon: str
    reduced: TernaryMap


def contract_class(
    tmap: TernaryMap, members: Iterable[str], symbol: str, new_name: str
) -> ContractionStep:
    """Replace a merge class by one composite taxon.

    Triples avoiding the class keep their values; a triple through the
    composite takes the value shared by all members, whose disagreement
    raises NotAMetricError.  At least two taxa must stay outside the class,
    otherwise no 3-subsets would remain.
    """
    group = tuple(sorted(set(members)))
    for t in group:
        tmap.taxa.require(t)
    if len(group) < 2:
        raise ValueError("a contraction needs at least two class members")
    check_identifier(new_name, "taxon name")
    if new_name in tmap.taxa:
        raise ValueError(f"new taxon {new_name!r} is already present")
    rest = [t for t in tmap.taxa if t not in set(group)]
    if len(rest) < 2:
        raise ValueError("a contraction needs at least two taxa outside the class")
    values: dict[tuple[str, ...], str] = {}
    for tri in combinations(rest, 3):
        values[tri] = tmap.triple_value(tri)
    for u, v in combinations(rest, 2):
        through = {tmap.triple_value((x, u, v)) for x in group}
        if len(through) > 1:
            raise NotAMetricError(
                f"class members disagree on the pair {u} {v}: values {' '.join(sorted(through))}"
            )
        values[(new_name, u, v)] = through.pop()
    reduced = build_ternary(
        TaxonSet(tuple(rest) + (new_name,)), tmap.alphabet, values
    )
    return ContractionStep(group, symbol, new_name, reduced)


def _grow(
    tmap: TernaryMap,
    leaf_of: dict[str, int],
    fresh: Iterator[int],
    on_step: Callable[[ContractionStep], None] | None,
    depth: int,
) -> tuple[list[tuple[int, int]], dict[int, str]]:
    """Edges and interior colors of the tree for tmap, attaching each current
    taxon at the vertex leaf_of names for it."""
    taxa = tmap.taxa.names
    if len(taxa) == 3:
        hub = next(fresh)
        return [(leaf_of[t], hub) for t in taxa], {hub: tmap.triple_value(taxa)}
    mergeable = equivalence_classes(tmap).nontrivial()
    if not mergeable:
        raise NotAMetricError("no pair of taxa merges, so the map encodes no tree")
    members, symbol = min(mergeable)
    if len(members) >= len(taxa) - 1:
        # Zero or one taxon outside the class: everything meets at one vertex.
        hub = next(fresh)
        return [(leaf_of[t], hub) for t in taxa], {hub: symbol}

    contraction = contract_class(tmap, members, symbol, f"@{depth + 1}")
    if on_step is not None:
        on_step(contraction)
    placeholder = next(fresh)
    reduced_leaf_of = {
        t: placeholder if t == contraction.new_taxon else leaf_of[t]
        for t in contraction.reduced.taxa
    }
    edges, colors = _grow(contraction.reduced, reduced_leaf_of, fresh, on_step, depth + 1)

    index, parent = next(
        (i, u if v == placeholder else v)
        for i, (u, v) in enumerate(edges)
        if placeholder in (u, v)
    )
    if colors[parent] == symbol:
        # The class vertex survived the reduction as the composite's parent.
        del edges[index]
        hub = parent
    else:
        # The class vertex was suppressed; the composite leaf becomes it.
        colors[placeholder] = symbol
        hub = placeholder
    edges.extend((leaf_of[x], hub) for x in members)
    return edges, colors


def reconstruct_tree(
    tmap: TernaryMap, on_step: Callable[[ContractionStep], None] | None = None
) -> ColoredTree:
    """The discriminating colored tree whose encoding is the given map.

    Raises NotAMetricError when no such tree exists.  ``on_step`` observes
    each contraction, in order.  The result is discriminating by
    construction and certified by re-encoding.
    """
    names = tmap.taxa.names
    leaf_of = {name: i for i, name in enumerate(names)}
    edges, colors = _grow(tmap, leaf_of, count(len(names)), on_step, 0)
    tree = ColoredTree(edges, dict(enumerate(names)), colors)
    recoded = tree.encode()
    if recoded != tmap:
        for tri in tmap.taxa.triples():
            got, want = recoded.triple_value(tri), tmap.triple_value(tri)
            if got != want:
                raise NotAMetricError(
                    f"no tree encodes this map: the candidate tree gives {got} on "
                    f"{' '.join(tri)} where the map gives {want}"
                )
    return tree
