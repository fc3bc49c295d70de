"""Colored unrooted trees and their ternary median maps.

A tree whose leaves carry taxa and whose interior vertices carry colors
defines a map on 3-subsets of taxa: each 3-subset goes to the color of its
median vertex.  This package encodes trees into such maps, checks arbitrary
maps against the conditions that characterize encodings, derives the induced
quartet systems, and reconstructs the unique discriminating tree from its
map.  The oracle module provides exhaustive small-case enumeration used to
cross-check everything else.
"""

from .checks import (
    K5Type,
    MetricReport,
    PartitionProfile,
    Violation,
    check_condition3,
    check_condition4,
    check_star,
    classify_k5,
    is_binary_encodable,
    partition_profile,
    verify_metric,
)
from .core import (
    NON_EVENT,
    MapBuildError,
    SymbolAlphabet,
    TableFormatError,
    TaxonSet,
    TernaryMap,
    UnknownTaxonError,
    build_ternary,
)
from .oracle import (
    Topology,
    TreeEnumeration,
    brute_force_reconstruct,
    enumerate_colorings,
    enumerate_trees,
    find_nonthin_witness,
)
from .quartets import (
    Quartet,
    QuartetSystem,
    generate_quartets,
    is_complete,
    is_saturated,
    is_thin,
    is_transitive,
    non_thin_quadruples,
    pairings,
    resolved_quartet,
)
from .reconstruct import (
    ContractionStep,
    EquivalenceClasses,
    NotAMetricError,
    contract_class,
    equivalence_classes,
    merge_symbol,
    reconstruct_tree,
)
from .tree import (
    ColoredTree,
    NewickParseError,
    TreeValidationError,
    canonical_code,
    parse_newick,
    to_dot,
    trees_isomorphic,
    write_newick,
)

__version__ = "0.1.0"

__all__ = [
    "NON_EVENT",
    "ColoredTree",
    "ContractionStep",
    "EquivalenceClasses",
    "K5Type",
    "MapBuildError",
    "MetricReport",
    "NewickParseError",
    "NotAMetricError",
    "PartitionProfile",
    "Quartet",
    "QuartetSystem",
    "SymbolAlphabet",
    "TableFormatError",
    "TaxonSet",
    "TernaryMap",
    "Topology",
    "TreeEnumeration",
    "TreeValidationError",
    "UnknownTaxonError",
    "Violation",
    "brute_force_reconstruct",
    "build_ternary",
    "canonical_code",
    "check_condition3",
    "check_condition4",
    "check_star",
    "classify_k5",
    "contract_class",
    "enumerate_colorings",
    "enumerate_trees",
    "equivalence_classes",
    "find_nonthin_witness",
    "generate_quartets",
    "is_binary_encodable",
    "is_complete",
    "is_saturated",
    "is_thin",
    "is_transitive",
    "merge_symbol",
    "non_thin_quadruples",
    "pairings",
    "parse_newick",
    "partition_profile",
    "reconstruct_tree",
    "resolved_quartet",
    "to_dot",
    "trees_isomorphic",
    "verify_metric",
    "write_newick",
]
