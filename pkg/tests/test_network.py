# -*- coding: utf-8 -*-

from fractions import Fraction

import numpy as np
import pytest

from gmnl_net.games import (
    BellGame, Behavior,
    biproduct_behavior, biseparable_bound_bruteforce, certify_cut_bound,
    merged_game, network_game, network_score, optimal_biproduct_behavior, pr_box,
    product_behavior,
)
from gmnl_net.netgraph import NetworkGraph
from gmnl_net.utils import InputError, UnsupportedError


@pytest.fixture
def triangle_game(chsh_game, triangle):
    return network_game(chsh_game, triangle)


def test_slot_structure(triangle_game):
    assert triangle_game.outputs == (4, 4, 4)
    assert triangle_game.inputs == (4, 4, 4)
    assert triangle_game.distribution_tensor().sum() == 1


def test_asymmetric_game_is_unsupported(triangle):
    win = np.zeros((2, 2, 2, 2))
    win[0, 1] = 1
    with pytest.raises(UnsupportedError):
        network_game(BellGame(win, np.full((2, 2), 0.25)), triangle)


def test_single_edge_network_is_the_base_game(chsh_game):
    ng = network_game(chsh_game, NetworkGraph.path(2))
    assert ng.outputs == (2, 2)
    assert np.array_equal(ng.win_tensor(), chsh_game.win)


def test_pr_box_product_wins_every_edge(triangle_game):
    assert network_score(triangle_game, product_behavior(triangle_game, pr_box())) == pytest.approx(1)


def test_network_score_checks_alphabets(triangle_game):
    with pytest.raises(InputError):
        network_score(triangle_game, pr_box())


def test_merged_game_keeps_internal_edges(triangle_game):
    game = merged_game(triangle_game, [0])
    assert game.alphabets == (4, 16, 4, 16)
    assert game.distribution.sum() == 1


def test_triangle_biseparable_bound(triangle_game):
    bound = biseparable_bound_bruteforce(triangle_game)
    assert bound.value == Fraction(5, 8)
    group, rest = bound.bipartition
    assert set(group) | set(rest) == {0, 1, 2}


def test_optimal_biproduct_attains_the_bound(triangle_game):
    for group in ([0], [0, 1], [0, 2]):
        behavior = optimal_biproduct_behavior(triangle_game, group)
        assert network_score(triangle_game, behavior) == pytest.approx(0.625, abs=1e-12)


def test_random_biproduct_behaviors_stay_below_the_bound(triangle_game, seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        behavior = biproduct_behavior(
            triangle_game, [1], rng.integers(4, size=4), rng.integers(16, size=16),
        )
        assert network_score(triangle_game, behavior) <= 0.625 + 1e-12


def test_biproduct_strategy_length(triangle_game):
    with pytest.raises(InputError):
        biproduct_behavior(triangle_game, [0], [0, 1], [0] * 16)


def test_star_biseparable_bound_is_single_game_bound(chsh_game):
    ng = network_game(chsh_game, NetworkGraph.star(2))
    assert biseparable_bound_bruteforce(ng).value == Fraction(3, 4)


def test_cut_bound_certification(triangle_game):
    biproduct = optimal_biproduct_behavior(triangle_game, [0])
    verdict = certify_cut_bound(triangle_game, biproduct)
    assert verdict.capacity == 2
    assert verdict.threshold == Fraction(5, 8)
    assert not verdict.certified

    t = 1 / 75
    mixed = Behavior.mixture([product_behavior(triangle_game, pr_box()), biproduct], [t, 1 - t])
    verdict = certify_cut_bound(triangle_game, mixed)
    assert verdict.score == pytest.approx(0.63)
    assert verdict.certified
    assert verdict.margin > 0


def test_cut_bound_with_supplied_bound(triangle_game):
    behavior = product_behavior(triangle_game, pr_box())
    verdict = certify_cut_bound(triangle_game, behavior, repetition_bound=lambda c: 0.75 ** c)
    assert verdict.threshold == pytest.approx(0.5625)
    assert verdict.certified
    with pytest.raises(UnsupportedError):
        certify_cut_bound(triangle_game, behavior, budget=1)
