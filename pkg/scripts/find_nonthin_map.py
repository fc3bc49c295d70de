#!/usr/bin/env python3
"""Search for a map whose quartet system is not thin.

Every tree encoding induces a thin quartet system: no 4-subset of taxa
supports two different quartets.  Thinness is not implied by the 4-subset
balance check and the resolver check alone, and this script exhibits the
gap.  It runs the guided six-taxa search, reports the witness map, the
checks it passes and fails, and the doubled-up quartets.

Usage:
    python3 scripts/find_nonthin_map.py
    python3 scripts/find_nonthin_map.py --taxa p q r s t u --symbols 0 1
    python3 scripts/find_nonthin_map.py --output witness.table
"""

import argparse
import sys
import time
from pathlib import Path

from tritree import (
    check_condition3,
    check_condition4,
    check_star,
    find_nonthin_witness,
    generate_quartets,
    non_thin_quadruples,
)


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--taxa",
        nargs=6,
        metavar="NAME",
        default=None,
        help="six taxon names for the search (default a1 a2 b1 b2 c1 c2)",
    )
    parser.add_argument(
        "--symbols",
        nargs=2,
        metavar="SYM",
        default=("A", "B"),
        help="the two symbols the witness map may use (default A B)",
    )
    parser.add_argument(
        "--output",
        type=Path,
        default=None,
        help="also write the witness triple table to this file",
    )
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    started = time.perf_counter()
    witness = find_nonthin_witness(
        taxa=tuple(args.taxa) if args.taxa else None, symbols=tuple(args.symbols)
    )
    elapsed = time.perf_counter() - started
    print(f"witness found in {elapsed:.3f}s\n")

    print(witness.to_table_text(), end="")

    cond3 = check_condition3(witness)
    cond4 = check_condition4(witness)
    star = check_star(witness)
    print("\nchecks:")
    print(f"  4-subset balance: {'pass' if not cond3 else 'fail'}")
    print(f"  5-subset check:   {'pass' if not cond4 else 'fail'}")
    print(f"  resolver check:   {'pass' if not star else 'fail'}")
    for violation in cond4:
        print(f"    {violation.line}")

    system = generate_quartets(witness)
    heavy = non_thin_quadruples(system)
    print(f"\nquartet system ({len(system)} quartets, {len(heavy)} doubled supports):")
    doubled = set()
    for quad in heavy:
        for quartet in system.on_support(quad):
            doubled.add(quartet)
            print(f"  {quartet}    <- support {' '.join(quad)}")
    for quartet in system:
        if quartet not in doubled:
            print(f"  {quartet}")

    if args.output is not None:
        args.output.write_text(witness.to_table_text())
        print(f"\nwrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
