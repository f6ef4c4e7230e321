"""Enumerate p-subgroups and p-subgroup chains of finite groups.

Subgroups of prime-power order are lifted one index-p step at a time
through normalizer quotients; a brute-force generator-closure oracle
provides an independent cross-check.
"""

from .catalog import catalog, load_group_file, parse_group_file
from .group import (
    Group,
    Permutation,
    element_order,
    group_from_generators,
    group_from_table,
    p_valuation,
)
from .oracle import brute_force_chain_count, brute_force_subgroups_of_order
from .psub import (
    ChainCount,
    ChainSpec,
    chain_count,
    count_elements_of_order_p,
    full_chain_count,
    overgroups_index_p,
    refinement_identity_check,
    subgroups_of_order_containing,
    subgroups_of_order_p,
    tuple_count_T,
)
from .quotient import CosetMap, pullback, quotient_group
from .subgroup import Subgroup, closure, conjugate_subgroup, index, is_normal_in, normalizer

__all__ = [
    "ChainCount", "ChainSpec", "CosetMap", "Group", "Permutation", "Subgroup",
    "brute_force_chain_count", "brute_force_subgroups_of_order", "catalog", "chain_count",
    "closure", "conjugate_subgroup", "count_elements_of_order_p", "element_order",
    "full_chain_count", "group_from_generators", "group_from_table", "index", "is_normal_in",
    "load_group_file", "normalizer", "overgroups_index_p", "p_valuation", "parse_group_file",
    "pullback", "quotient_group", "refinement_identity_check", "subgroups_of_order_containing",
    "subgroups_of_order_p", "tuple_count_T",
]
