#!/usr/bin/env python3
"""Census of all small symmetric ternary maps over a fixed alphabet.

Sweeps every map on n taxa built from the given symbols and tallies how
many pass the metric conditions, how many the reconstructor accepts, and
(for five taxa) how the 5-subset value patterns distribute.  The two
accept counts must agree: reconstruction succeeds exactly on maps that
encode a tree, and its certificate re-encodes the result.

Usage:
    python3 scripts/census_small_maps.py
    python3 scripts/census_small_maps.py --sizes 4 --symbols a b c
"""

import argparse
import sys
from dataclasses import dataclass, field
from itertools import product

from tritree import (
    K5Type,
    NotAMetricError,
    SymbolAlphabet,
    TaxonSet,
    build_ternary,
    classify_k5,
    is_binary_encodable,
    reconstruct_tree,
    verify_metric,
)


@dataclass
class CensusRow:
    taxa_count: int
    symbols: tuple[str, ...]
    total: int = 0
    metric: int = 0
    reconstructed: int = 0
    binary_encodable: int = 0
    disagreements: int = 0
    k5_shapes: dict[K5Type, int] = field(default_factory=dict)


def sweep(taxa_count: int, symbols: tuple[str, ...]) -> CensusRow:
    taxa = TaxonSet(tuple(f"t{i + 1}" for i in range(taxa_count)))
    alphabet = SymbolAlphabet(frozenset(symbols))
    triples = tuple(taxa.triples())
    row = CensusRow(taxa_count, symbols)
    for values in product(symbols, repeat=len(triples)):
        tmap = build_ternary(taxa, alphabet, dict(zip(triples, values)))
        row.total += 1
        accepted = verify_metric(tmap).is_metric
        if accepted:
            row.metric += 1
        try:
            reconstruct_tree(tmap)
        except NotAMetricError:
            rebuilt = False
        else:
            rebuilt = True
            row.reconstructed += 1
        if rebuilt != accepted:
            row.disagreements += 1
        if accepted and is_binary_encodable(tmap):
            row.binary_encodable += 1
        if taxa_count == 5:
            shape = classify_k5(tmap, taxa.names)
            row.k5_shapes[shape] = row.k5_shapes.get(shape, 0) + 1
    return row


def report(row: CensusRow) -> None:
    label = " ".join(row.symbols)
    print(f"{row.taxa_count} taxa, symbols {label}: {row.total} maps")
    print(f"  pass the metric conditions: {row.metric}")
    print(f"  reconstructed to a tree:    {row.reconstructed}")
    print(f"  of those, binary trees:     {row.binary_encodable}")
    print(f"  verifier/reconstructor disagreements: {row.disagreements}")
    if row.k5_shapes:
        print("  5-subset value patterns:")
        for shape in K5Type:
            count = row.k5_shapes.get(shape, 0)
            if count:
                print(f"    {shape.name}: {count}")
    print()


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        nargs="+",
        type=int,
        default=(4, 5),
        metavar="N",
        help="taxa counts to sweep (default: 4 5)",
    )
    parser.add_argument(
        "--symbols",
        nargs="+",
        default=("a", "b"),
        metavar="SYM",
        help="alphabet for the sweep (default: a b)",
    )
    args = parser.parse_args(argv)
    for n in args.sizes:
        if not 4 <= n <= 6:
            parser.error("sizes must lie between 4 and 6")
    count = len(set(args.symbols))
    if count < 2:
        parser.error("the sweep needs at least two distinct symbols")
    worst = max(args.sizes)
    cells = worst * (worst - 1) * (worst - 2) // 6
    if count**cells > 5_000_000:
        parser.error(f"{count}^{cells} maps is too many; shrink sizes or symbols")
    return args


def main(argv=None):
    args = parse_args(argv)
    for n in sorted(set(args.sizes)):
        report(sweep(n, tuple(dict.fromkeys(args.symbols))))
    return 0


if __name__ == "__main__":
    sys.exit(main())
