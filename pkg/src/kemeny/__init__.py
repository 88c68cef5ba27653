"""Exact solvers for Kemeny rank aggregation."""

from .core import (
    Candidate,
    Election,
    ElectionFormatError,
    PairTally,
    Vote,
    is_consistent,
    kt_distance,
    kt_distance_naive,
    pairwise_tally,
    parse_election,
    position,
    relation_set,
    score_of,
    serialize_election,
    sets_agree,
    subscore,
)
from .dp import solve_dp
from .instances import GenParams, PropertyReport, analyze, generate
from .oracle import brute_force, solve_brute
from .orderstore import OrderStore
from .reduce import condorcet_reduce, count_majority_stats, solve_two_thirds_special_case
from .searchtree import (
    SearchConfig,
    SolveResult,
    solve,
    solve_optimal,
    solve_pairs,
    solve_sets,
    solve_triples,
)

__version__ = "0.1.0"
