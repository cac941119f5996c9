# -*- coding: utf-8 -*-

import io

from fractions import Fraction

import numpy as np
import pytest

from gmnl_net import NetworkGraph
from gmnl_net.games import (
    BellGame, Behavior, behavior_header, network_game, network_score, pr_box, product_behavior,
    read_behavior, read_game, write_behavior, write_game,
)
from gmnl_net.utils import InputError


def rewind(buffer):
    buffer.seek(0)
    return buffer


def test_game_table_keeps_exact_values(chsh_game):
    buffer = io.StringIO()
    write_game(chsh_game, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == 'a,b,x,y,win,p'
    assert lines[1] == '0,0,0,0,1,1/4'
    assert len(lines) == 17
    game = read_game(rewind(buffer))
    assert game.exact
    assert game.distribution[1, 1] == Fraction(1, 4)
    assert np.array_equal(game.win, chsh_game.win)


def test_float_game_table(tmp_path):
    x = 2 ** 0.5 / 10
    game = BellGame(np.ones((1, 1, 2, 2)), [[x, 0.5 - x], [0.5 - x, x]])
    path = tmp_path / 'game.csv'
    write_game(game, path)
    loaded = read_game(path)
    assert not loaded.exact
    assert loaded.distribution[0, 0] == x


def test_malformed_game_tables():
    with pytest.raises(InputError, match='header'):
        read_game(io.StringIO('a,b,x,y,p,win\n'))
    with pytest.raises(InputError, match='differs'):
        read_game(io.StringIO('a,b,x,y,win,p\n0,0,0,0,1,1/2\n1,0,0,0,0,1/4\n'))
    with pytest.raises(InputError, match='lists'):
        read_game(io.StringIO('a,b,x,y,win,p\n1,1,0,0,1,1\n'))
    with pytest.raises(InputError, match='duplicate'):
        read_game(io.StringIO('a,b,x,y,win,p\n0,0,0,0,1,1\n0,0,0,0,1,1\n'))
    with pytest.raises(InputError, match='Malformed'):
        read_game(io.StringIO('a,b,x,y,win,p\n0,0,0,0,one,1\n'))


def test_plain_behavior_table():
    buffer = io.StringIO()
    write_behavior(pr_box(), buffer)
    assert buffer.getvalue().startswith('a0,a1,x0,x1,P\n')
    behavior = read_behavior(rewind(buffer))
    assert np.array_equal(behavior.probabilities, pr_box().probabilities)


def test_behavior_header_names_slots(chsh_game):
    ng = network_game(chsh_game, NetworkGraph.complete(3))
    assert behavior_header(3, ng) == (
        'a0.1', 'a0.2', 'a1.0', 'a1.2', 'a2.0', 'a2.1',
        'x0.1', 'x0.2', 'x1.0', 'x1.2', 'x2.0', 'x2.1', 'P',
    )


def test_network_behavior_by_slots(chsh_game):
    ng = network_game(chsh_game, NetworkGraph.path(3))
    buffer = io.StringIO()
    write_behavior(product_behavior(ng, pr_box()), buffer, ng)
    assert buffer.getvalue().startswith('a0.1,a1.0,a1.2,a2.1,x0.1,x1.0,x1.2,x2.1,P\n')
    behavior = read_behavior(rewind(buffer), ng)
    assert network_score(ng, behavior) == pytest.approx(1)


def test_network_behavior_with_wrong_slot_order(chsh_game):
    ng = network_game(chsh_game, NetworkGraph.path(3))
    table = 'a0.1,a1.2,a1.0,a2.1,x0.1,x1.0,x1.2,x2.1,P\n'
    with pytest.raises(InputError, match='slot order'):
        read_behavior(io.StringIO(table), ng)
    with pytest.raises(InputError):
        write_behavior(pr_box(), io.StringIO(), ng)


def test_incomplete_behavior_table():
    with pytest.raises(InputError, match='lists'):
        read_behavior(io.StringIO('a0,a1,x0,x1,P\n0,0,0,0,1\n1,1,1,1,1\n'))
    with pytest.raises(InputError, match='end with'):
        read_behavior(io.StringIO('a0,a1,x0,x1\n'))
