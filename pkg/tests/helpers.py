"""Fixture builders and the exhaustive small-tree corpus shared by the tests.

The corpus takes every topology on 4, 5, and 6 leaves and colors it in all
discriminating ways with up to three symbols.  Topologies whose coloring
count exceeds the cap are thinned by a fixed stride, so the selection is
deterministic.  At these sizes the cap never actually binds.
"""

from functools import lru_cache

from tritree import (
    ColoredTree,
    SymbolAlphabet,
    TaxonSet,
    build_ternary,
    enumerate_colorings,
    enumerate_trees,
)

PALETTE = ("a", "b", "c")
CAP_PER_TOPOLOGY = 500


@lru_cache(maxsize=None)
def colored_trees(n: int, symbols: tuple[str, ...] = PALETTE) -> tuple[ColoredTree, ...]:
    out = []
    for topology in enumerate_trees(n).topologies:
        colorings = list(enumerate_colorings(topology, symbols))
        if len(colorings) > CAP_PER_TOPOLOGY:
            stride = -(-len(colorings) // CAP_PER_TOPOLOGY)
            colorings = colorings[::stride][:CAP_PER_TOPOLOGY]
        out.extend(topology.with_colors(coloring) for coloring in colorings)
    return tuple(out)


@lru_cache(maxsize=None)
def encoded_corpus(n: int, symbols: tuple[str, ...] = PALETTE):
    """Pairs (tree, encoding) for the whole corpus at one size."""
    return tuple((tree, tree.encode()) for tree in colored_trees(n, symbols))


def star_tree(n: int = 5, color: str = "a") -> ColoredTree:
    """One hub of the given color carrying taxa t1..tn."""
    hub = n
    edges = [(i, hub) for i in range(n)]
    return ColoredTree(edges, {i: f"t{i + 1}" for i in range(n)}, {hub: color})


def caterpillar5(colors: tuple[str, str, str] = ("a", "b", "c")) -> ColoredTree:
    """Binary tree on t1..t5 with a path of three interior vertices.

    t1 and t2 hang off the first interior vertex, t3 off the second, t4 and
    t5 off the third.
    """
    edges = [(0, 5), (1, 5), (5, 6), (2, 6), (6, 7), (3, 7), (4, 7)]
    leaves = {0: "t1", 1: "t2", 2: "t3", 3: "t4", 4: "t5"}
    return ColoredTree(edges, leaves, dict(zip((5, 6, 7), colors)))


def cherry5() -> ColoredTree:
    """t1 and t2 on an 'a' vertex joined to a 'b' vertex carrying t3, t4, t5."""
    edges = [(0, 5), (1, 5), (5, 6), (2, 6), (3, 6), (4, 6)]
    leaves = {0: "t1", 1: "t2", 2: "t3", 3: "t4", 4: "t5"}
    return ColoredTree(edges, leaves, {5: "a", 6: "b"})


def two_cycle_map():
    """Two symbols tracing complementary 5-cycles over taxa u, w, x, y, z.

    Keying each pair of taxa by the value of the complementary triple, the
    'a' pairs form the cycle x-y-z-u-w-x and the 'b' pairs the cycle
    x-z-w-y-u-x.  Every 4-subset splits 2-2, the full 5-set splits 5-5, so
    the map passes the 4-subset check and fails the 5-subset check.
    """
    taxa = TaxonSet(("u", "w", "x", "y", "z"))
    a_triples = [
        ("z", "u", "w"),
        ("x", "u", "w"),
        ("x", "y", "w"),
        ("x", "y", "z"),
        ("y", "z", "u"),
    ]
    entries = {}
    for tri in taxa.triples():
        on_a = any(set(tri) == set(t) for t in a_triples)
        entries[tri] = "a" if on_a else "b"
    return build_ternary(taxa, SymbolAlphabet(frozenset(("a", "b"))), entries)
