# -*- coding: utf-8 -*-

from .base_classes import BellGame, Behavior, chsh, pr_box, score, krep
from .bounds import LocalOptimum, local_bound_bruteforce, optimal_local_strategies
from .khot_vishnoi import (
    KVParams, KVStrategy, ScoreEstimate, ScoreMethod,
    MaxWeightAssignment, ProductAssignment,
    sample_round, win, classical_bound, classical_repetition_bound,
    max_weight_strategy, random_strategy,
    exact_score, distance_counts, score_from_counts, naive_score, mc_score, naive_quantum_score,
    orbit_basis, outcome_distribution,
    quantum_orbit_strategy_score, quantum_orbit_strategy_closed_form, kv_diagnostic_table,
)
from .network import (
    NetworkGame, BiseparableBound, CutBoundVerdict,
    network_game, network_score, product_behavior, deterministic_network_behavior,
    merged_game, biseparable_bound_bruteforce, biproduct_behavior, optimal_biproduct_behavior,
    certify_cut_bound,
)
from .tables import read_game, write_game, read_behavior, write_behavior, behavior_header
