"""Colored unrooted trees on labeled leaves.

A colored tree has its leaves labeled bijectively by taxa and every interior
vertex labeled by a color symbol.  Degree-2 vertices are banned, so "interior"
always means degree 3 or more.  The tree encodes a ternary map: the value on
three taxa is the color of their median, the single vertex shared by the three
pairwise leaf paths.

Trees are read and written in a restricted Newick dialect: rooted syntax
interpreted as an unrooted tree, interior labels mandatory (they are the
colors), no branch lengths.  A two-child unlabeled root is understood as an
artifact of rooting an edge and is suppressed on input.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .core import SymbolAlphabet, TaxonSet, TernaryMap, check_identifier
from .quartets import Quartet, QuartetSystem, pairings

__all__ = [
    "ColoredTree",
    "NewickParseError",
    "TreeValidationError",
    "canonical_code",
    "parse_newick",
    "to_dot",
    "trees_isomorphic",
    "write_newick",
]


class TreeValidationError(ValueError):
    """The vertex, edge, taxon, and color data do not form a valid colored tree."""


class NewickParseError(ValueError):
    """A Newick text could not be parsed in this dialect."""

    def __init__(self, message: str, position: int | None = None) -> None:
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ColoredTree:
    """An unrooted tree with taxon-labeled leaves and color-labeled interior vertices.

    Vertices are integers.  ``leaf_taxa`` maps each degree-1 vertex to its
    taxon, ``colors`` maps each interior vertex to its color; the two key
    sets must partition the vertex set.
    """

    __slots__ = ("edges", "leaf_taxa", "colors", "taxa", "_adj", "_leaf_of", "_parent_cache")

    def __init__(
        self,
        edges: Iterable[tuple[int, int]],
        leaf_taxa: Mapping[int, str],
        colors: Mapping[int, str],
    ) -> None:
        edge_list: list[tuple[int, int]] = []
        for u, v in edges:
            if not isinstance(u, int) or not isinstance(v, int):
                raise TreeValidationError(f"vertex ids must be integers, got ({u!r}, {v!r})")
            if u == v:
                raise TreeValidationError(f"self-loop at vertex {u}")
            edge_list.append((u, v) if u < v else (v, u))
        edge_set = set(edge_list)
        if len(edge_set) != len(edge_list):
            raise TreeValidationError("repeated edge")
        leaves = dict(leaf_taxa)
        interior = dict(colors)
        for v in (*leaves, *interior):
            if not isinstance(v, int):
                raise TreeValidationError(f"vertex ids must be integers, got {v!r}")
        vertices = {v for e in edge_set for v in e} | set(leaves) | set(interior)
        overlap = set(leaves) & set(interior)
        if overlap:
            raise TreeValidationError(
                f"vertex {min(overlap)} is listed both as a leaf and as a colored interior vertex"
            )
        uncovered = vertices - set(leaves) - set(interior)
        if uncovered:
            raise TreeValidationError(f"vertex {min(uncovered)} has neither a taxon nor a color")
        names = list(leaves.values())
        if len(names) < 3:
            raise TreeValidationError(f"a tree needs at least three leaves, got {len(names)}")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise TreeValidationError(f"duplicate taxon names: {' '.join(dupes)}")
        if len(edge_set) != len(vertices) - 1:
            raise TreeValidationError(
                f"not a tree: {len(vertices)} vertices need {len(vertices) - 1} edges, got {len(edge_set)}"
            )
        adj: dict[int, list[int]] = {v: [] for v in vertices}
        for u, v in edge_set:
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(vertices))
        seen = {start}
        frontier = [start]
        while frontier:
            seen.update(nxt := [u for v in frontier for u in adj[v] if u not in seen])
            frontier = nxt
        if len(seen) != len(vertices):
            raise TreeValidationError("not a tree: the edge set is not connected")
        for v in sorted(vertices):
            d = len(adj[v])
            if v in leaves and d != 1:
                raise TreeValidationError(
                    f"leaf vertex {v} ({leaves[v]!r}) has degree {d}, leaves must have degree 1"
                )
            if v in interior and d < 3:
                raise TreeValidationError(
                    f"interior vertex {v} has degree {d}, interior vertices need degree 3 or more"
                )
        try:
            taxa = TaxonSet(tuple(names))
            for color in interior.values():
                check_identifier(color, "color")
        except ValueError as exc:
            raise TreeValidationError(str(exc)) from exc

        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self.leaf_taxa: dict[int, str] = leaves
        self.colors: dict[int, str] = interior
        self.taxa = taxa
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        self._leaf_of = {name: v for v, name in leaves.items()}
        self._parent_cache: dict[int, dict[int, int | None]] = {}

    # -- structure ---------------------------------------------------------

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def leaf_for(self, taxon: str) -> int:
        self.taxa.require(taxon)
        return self._leaf_of[taxon]

    def is_binary(self) -> bool:
        """True when every interior vertex has degree exactly 3."""
        return all(len(self._adj[v]) == 3 for v in self.colors)

    def is_discriminating(self) -> bool:
        """True when no two adjacent interior vertices share a color."""
        return all(
            self.colors[u] != self.colors[v]
            for u, v in self.edges
            if u in self.colors and v in self.colors
        )

    def pseudo_cherries(self) -> tuple[tuple[tuple[str, ...], str], ...]:
        """Groups of two or more leaves sharing one interior vertex.

        Each entry pairs the sorted taxa of all leaves at that vertex with
        the vertex's color; entries are sorted by the taxa tuple.
        """
        found = []
        for v in self.colors:
            leaf_nbrs = [self.leaf_taxa[u] for u in self._adj[v] if u in self.leaf_taxa]
            if len(leaf_nbrs) >= 2:
                found.append((tuple(sorted(leaf_nbrs)), self.colors[v]))
        return tuple(sorted(found))

    # -- medians and encoding ----------------------------------------------

    def _parents_from(self, root: int) -> dict[int, int | None]:
        cached = self._parent_cache.get(root)
        if cached is not None:
            return cached
        parents: dict[int, int | None] = {root: None}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for u in self._adj[v]:
                    if u not in parents:
                        parents[u] = v
                        nxt.append(u)
            frontier = nxt
        self._parent_cache[root] = parents
        return parents

    def _path_vertices(self, x: str, y: str) -> set[int]:
        parents = self._parents_from(self._leaf_of[x])
        verts: set[int] = set()
        v: int | None = self._leaf_of[y]
        while v is not None:
            verts.add(v)
            v = parents[v]
        return verts

    def median(self, x: str, y: str, z: str) -> int:
        """The single vertex lying on all three pairwise paths between the taxa."""
        for t in (x, y, z):
            self.taxa.require(t)
        if len({x, y, z}) != 3:
            raise ValueError("the median is defined for three distinct taxa")
        parents = self._parents_from(self._leaf_of[x])
        on_xy: set[int] = set()
        v: int | None = self._leaf_of[y]
        while v is not None:
            on_xy.add(v)
            v = parents[v]
        w = self._leaf_of[z]
        while w not in on_xy:
            w = parents[w]  # type: ignore[assignment]
        return w

    def encode(self) -> TernaryMap:
        """The ternary map sending each 3-subset of taxa to its median's color."""
        alphabet = SymbolAlphabet(frozenset(self.colors.values()))
        values = {tri: self.colors[self.median(*tri)] for tri in self.taxa.triples()}
        return TernaryMap(self.taxa, alphabet, values)

    def displayed_quartets(self) -> QuartetSystem:
        """Quartets a b | c d whose two pair paths share no vertex."""
        paths = {
            (x, y): frozenset(self._path_vertices(x, y))
            for x, y in combinations(self.taxa.names, 2)
        }
        members = []
        for quad in combinations(self.taxa.names, 4):
            for pair, other in pairings(*quad):
                if paths[pair].isdisjoint(paths[other]):
                    members.append(Quartet(pair, other))
        return QuartetSystem(self.taxa, members)

    # -- comparison ----------------------------------------------------------

    def canonical_form(self) -> tuple:
        """A value equal across exactly the isomorphic colored trees on these taxa."""
        return canonical_code(self._adj, self.leaf_taxa, self.colors)

    def __repr__(self) -> str:
        return f"ColoredTree(leaves={len(self.leaf_taxa)}, interior={len(self.colors)})"


def canonical_code(
    adj: Mapping[int, Iterable[int]],
    leaf_names: Mapping[int, str],
    colors: Mapping[int, str] | None = None,
) -> tuple:
    """Canonical rooted code of a leaf-labeled tree, rooted at the smallest taxon.

    With ``colors`` the code separates trees up to colored isomorphism; without
    it, up to plain leaf-labeled isomorphism.  Leaf and interior marks use
    distinct prefixes so child codes always sort without type clashes.
    """
    root_leaf = min(leaf_names, key=leaf_names.__getitem__)

    def rec(v: int, parent: int | None) -> tuple:
        if v in leaf_names:
            return ("0leaf", leaf_names[v])
        mark = "1int" if colors is None else "1int:" + colors[v]
        kids = sorted(rec(u, v) for u in adj[v] if u != parent)
        return (mark, tuple(kids))

    (neighbor,) = tuple(adj[root_leaf])
    return (leaf_names[root_leaf], rec(neighbor, root_leaf))


def trees_isomorphic(a: ColoredTree, b: ColoredTree) -> bool:
    """True when the trees match up to relabeling of vertices (taxa and colors fixed)."""
    return a.taxa.names == b.taxa.names and a.canonical_form() == b.canonical_form()


# -- Newick dialect ----------------------------------------------------------

_NAME_STOP = frozenset("(),;:#")


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str) -> None:
        raise NewickParseError(message, self.pos)

    def scan_name(self) -> str:
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace() or ch in _NAME_STOP:
                break
            self.pos += 1
        return self.text[start : self.pos]

    def reject_branch_length(self) -> None:
        self.skip_ws()
        if self.peek() == ":":
            self.fail("branch lengths are not supported")


def _parse_subtree(cur: _Cursor) -> tuple:
    cur.skip_ws()
    ch = cur.peek()
    if ch == "(":
        cur.pos += 1
        children = [_parse_subtree(cur)]
        cur.skip_ws()
        while cur.peek() == ",":
            cur.pos += 1
            children.append(_parse_subtree(cur))
            cur.skip_ws()
        if cur.peek() != ")":
            cur.fail("expected ',' or ')'")
        cur.pos += 1
        cur.skip_ws()
        label_pos = cur.pos
        label = cur.scan_name()
        cur.reject_branch_length()
        return ("int", label or None, children, label_pos)
    if ch == "":
        cur.fail("unexpected end of input")
    if ch == ":":
        cur.fail("branch lengths are not supported")
    if ch in _NAME_STOP:
        cur.fail(f"unexpected character {ch!r}")
    name_pos = cur.pos
    name = cur.scan_name()
    cur.reject_branch_length()
    return ("leaf", name, name_pos)


def _collect_leaves(spec: tuple, out: list[tuple[str, int]]) -> None:
    if spec[0] == "leaf":
        out.append((spec[1], spec[2]))
    else:
        for child in spec[2]:
            _collect_leaves(child, out)


def parse_newick(text: str) -> ColoredTree:
    """Parse one tree in the restricted Newick dialect.

    Interior labels are colors and are mandatory, except that a root with
    exactly two children may stay unlabeled: it is then removed and its two
    children joined by an edge, undoing a rooting of the unrooted tree.
    """
    cur = _Cursor(text)
    root = _parse_subtree(cur)
    cur.skip_ws()
    if cur.peek() != ";":
        cur.fail("expected ';'")
    cur.pos += 1
    cur.skip_ws()
    if cur.pos != len(cur.text):
        cur.fail("trailing content after ';'")

    leaf_specs: list[tuple[str, int]] = []
    _collect_leaves(root, leaf_specs)
    for name, pos in leaf_specs:
        if name.startswith("@"):
            raise NewickParseError(
                f"taxon name {name!r} is reserved ('@' prefixes composite taxa)", pos
            )
    names = [name for name, _ in leaf_specs]
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise TreeValidationError(f"duplicate taxon names: {' '.join(dupes)}")

    leaf_id = {name: i for i, name in enumerate(sorted(names))}
    edges: list[tuple[int, int]] = []
    leaf_taxa: dict[int, str] = {}
    colors: dict[int, str] = {}
    counter = len(names)

    def build(spec: tuple, required_label: bool = True) -> int:
        nonlocal counter
        if spec[0] == "leaf":
            vid = leaf_id[spec[1]]
            leaf_taxa[vid] = spec[1]
            return vid
        _, label, children, label_pos = spec
        if label is None and required_label:
            raise NewickParseError("interior vertex needs a color label", label_pos)
        vid = counter
        counter += 1
        if label is not None:
            colors[vid] = label
        for child in children:
            edges.append((vid, build(child)))
        return vid

    if root[0] == "int" and root[1] is None:
        if len(root[2]) != 2:
            raise NewickParseError(
                "the root needs a color label unless it has exactly two children", root[3]
            )
        left = build(root[2][0])
        right = build(root[2][1])
        edges.append((left, right))
    else:
        build(root)
    return ColoredTree(edges, leaf_taxa, colors)


def write_newick(tree: ColoredTree) -> str:
    """Serialize a colored tree, rooted at the interior neighbor of the smallest taxon.

    Children are ordered by their rendered text, so equal trees print
    identically.
    """
    smallest = tree.leaf_for(tree.taxa.names[0])
    (root,) = tree.neighbors(smallest)

    def render(v: int, parent: int | None) -> str:
        if v in tree.leaf_taxa:
            return tree.leaf_taxa[v]
        parts = sorted(render(u, v) for u in tree.neighbors(v) if u != parent)
        return "(" + ",".join(parts) + ")" + tree.colors[v]

    return render(root, None) + ";"


def to_dot(tree: ColoredTree) -> str:
    """Graphviz text for a colored tree: boxed leaves, round colored interiors."""

    def quote(label: str) -> str:
        return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["graph colored_tree {"]
    for v in sorted(tree.leaf_taxa):
        lines.append(f"  v{v} [shape=box label={quote(tree.leaf_taxa[v])}];")
    for v in sorted(tree.colors):
        lines.append(f"  v{v} [shape=circle label={quote(tree.colors[v])}];")
    for u, v in tree.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
