# -*- coding: utf-8 -*-

from fractions import Fraction

import numpy as np
import pytest

from gmnl_net.games import (
    Behavior, BellGame, chsh, krep, local_bound_bruteforce, optimal_local_strategies, pr_box,
    score,
)
from gmnl_net.utils import CapacityError, InputError


def test_chsh_is_exact_and_symmetric(chsh_game):
    assert chsh_game.exact
    assert chsh_game.alphabets == (2, 2, 2, 2)
    assert chsh_game.is_symmetric()


def test_game_validation():
    with pytest.raises(InputError):
        BellGame(np.ones((2, 2, 2)), np.full((2, 2), 0.25))
    with pytest.raises(InputError):
        BellGame(np.ones((2, 2, 2, 2)), np.full((2, 3), 1 / 6))
    with pytest.raises(InputError, match='normalized'):
        BellGame(np.ones((2, 2, 2, 2)), np.full((2, 2), 0.3))
    with pytest.raises(InputError):
        BellGame(np.full((2, 2, 2, 2), 2), np.full((2, 2), 0.25))


def test_pr_box_wins_chsh(chsh_game):
    assert score(chsh_game, pr_box()) == 1


def test_uniform_behavior_scores_half(chsh_game):
    assert score(chsh_game, Behavior(np.full((2, 2, 2, 2), 0.25))) == pytest.approx(0.5)


def test_behavior_validation():
    with pytest.raises(InputError, match='normalized'):
        Behavior(np.full((2, 2, 2, 2), 0.3))
    with pytest.raises(InputError):
        Behavior(-np.ones((2, 2)))


def test_mixture_is_linear_in_score(chsh_game):
    deterministic = Behavior.deterministic([[0, 0], [0, 0]], (2, 2))
    mixed = Behavior.mixture([pr_box(), deterministic], [0.25, 0.75])
    assert score(chsh_game, mixed) == pytest.approx(0.25 * 1 + 0.75 * 0.75)


def test_chsh_local_bound(chsh_game):
    value = local_bound_bruteforce(chsh_game)
    assert value == Fraction(3, 4)
    assert isinstance(value, Fraction)


def test_chsh_two_repetition_local_bound(chsh_game):
    assert local_bound_bruteforce(krep(chsh_game, 2)) == Fraction(5, 8)


def test_optimal_strategies_attain_the_bound(chsh_game):
    optimum = optimal_local_strategies(krep(chsh_game, 2))
    behavior = Behavior.deterministic([optimum.alice, optimum.bob], (4, 4))
    assert score(krep(chsh_game, 2), behavior) == pytest.approx(0.625)


def test_float_games_give_float_bounds():
    win = np.zeros((2, 2, 2, 2))
    win[0, 0] = 1
    x = np.sqrt(2) / 10
    game = BellGame(win, [[x, 0.5 - x], [0.5 - x, x]])
    assert not game.exact
    value = local_bound_bruteforce(game)
    assert isinstance(value, float)
    assert value == pytest.approx(1)


def test_krep_structure(chsh_game):
    twice = krep(chsh_game, 2)
    assert twice.alphabets == (4, 4, 4, 4)
    # composite index: first instance is the high digit
    assert twice.win[0b10, 0b00, 0b11, 0b10] == chsh_game.win[1, 0, 1, 1] * chsh_game.win[0, 0, 1, 0]
    assert twice.distribution.sum() == 1


def test_krep_budget(chsh_game):
    with pytest.raises(CapacityError):
        krep(chsh_game, 5, max_table_size=1 << 10)
    with pytest.raises(InputError):
        krep(chsh_game, 0)


def test_strategy_budget(chsh_game):
    with pytest.raises(CapacityError):
        local_bound_bruteforce(krep(chsh_game, 2), budget=10)


def test_parallel_enumeration_gives_same_bound(chsh_game, monkeypatch):
    monkeypatch.setenv('GMNL_THREADS', '2')
    assert local_bound_bruteforce(krep(chsh_game, 2), workers=2) == Fraction(5, 8)
