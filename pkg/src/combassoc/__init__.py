"""Rewriting, completion and counting for the comb-associative operads."""

from .avoiders import (AvoiderAutomaton, brute_count_avoiders, build_avoider_automaton,
                       count_avoiders, hilbert_closed_form)
from .completion import (BranchingPair, CompletionConfig, CompletionReport, complete,
                         count_normal_forms, critical_pairs, interreduce, verify_confluence)
from .congruence import ArityPartition, are_congruent, build_partition, dimension, dims_sequence, refines
from .rewriting import (Match, RewriteRule, RuleSet, apply_at, check_termination_order,
                        find_matches, normal_form, one_step_reducts)
from .series import CoefficientSeries
from .trees import (LEAF, compare_lex, compose_at, degree, enumerate_trees, left_comb, node,
                    parse_prefix_word, prefix_word, right_comb)

__version__ = "0.1.0"

__all__ = [
    "AvoiderAutomaton",
    "brute_count_avoiders",
    "build_avoider_automaton",
    "count_avoiders",
    "hilbert_closed_form",
    "BranchingPair",
    "CompletionConfig",
    "CompletionReport",
    "complete",
    "count_normal_forms",
    "critical_pairs",
    "interreduce",
    "verify_confluence",
    "ArityPartition",
    "are_congruent",
    "build_partition",
    "dimension",
    "dims_sequence",
    "refines",
    "Match",
    "RewriteRule",
    "RuleSet",
    "apply_at",
    "check_termination_order",
    "find_matches",
    "normal_form",
    "one_step_reducts",
    "CoefficientSeries",
    "LEAF",
    "compare_lex",
    "compose_at",
    "degree",
    "enumerate_trees",
    "left_comb",
    "node",
    "parse_prefix_word",
    "prefix_word",
    "right_comb",
]
