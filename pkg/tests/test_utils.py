# -*- coding: utf-8 -*-

import numpy as np
import pytest

from gmnl_net.utils import (
    AscentMonitor, InputError, ParametrizedObject,
    ensure_tuple, format_float, get_worker_count, make_rng, map_blocks, split_into_blocks,
)


class Sample(ParametrizedObject):
    parameters = {'alpha': None, 'beta': 2}


class StrictSample(Sample):
    unknown_parameter_policy = ParametrizedObject.UnknownParameterPolicy.RAISE
    parameters = {'gamma': 0.5}


def test_parameters_are_collected_along_mro():
    obj = StrictSample(alpha=1)
    assert obj.to_dict(full=True) == {'alpha': 1, 'beta': 2, 'gamma': 0.5}
    assert obj.to_dict() == {'alpha': 1}
    assert StrictSample(**obj.to_dict()) == obj


def test_required_parameter():
    with pytest.raises(InputError, match='alpha'):
        Sample()


def test_unknown_parameter_policy(caplog):
    Sample(alpha=1, delta=3)
    assert 'delta' in caplog.text
    with pytest.raises(InputError, match='delta'):
        StrictSample(alpha=1, delta=3)


def test_frozen_attributes():
    obj = Sample(alpha=1)
    obj.beta = 5
    with pytest.raises(AttributeError):
        obj.epsilon = 1


def test_make_rng_streams_are_addressed():
    first = make_rng(7, 1, 0).random(4)
    again = make_rng(7, 1, 0).random(4)
    other = make_rng(7, 1, 1).random(4)
    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, other)
    generator = np.random.default_rng(1)
    assert make_rng(generator, 3) is generator


def test_split_into_blocks():
    assert split_into_blocks(10, 4) == [4, 4, 2]
    assert split_into_blocks(0, 4) == []
    with pytest.raises(InputError):
        split_into_blocks(-1, 4)


def test_worker_count_is_capped_by_environment(monkeypatch):
    monkeypatch.setenv('GMNL_THREADS', '2')
    assert get_worker_count(8) == 2
    assert get_worker_count() == 2
    monkeypatch.setenv('GMNL_THREADS', 'many')
    with pytest.raises(InputError):
        get_worker_count(1)


def test_map_blocks_keeps_order():
    assert map_blocks(pow, [(2, 3), (3, 2), (5, 0)], workers=1) == [8, 9, 1]


def test_ascent_monitor_stops_on_small_increment():
    monitor = AscentMonitor(tolerance=1e-3, max_iterations=100)
    found = []
    values = iter([0.1, 0.5, 0.7, 0.7001])
    while not monitor.check_converged(next(values), found.append):
        pass
    assert monitor.best_value == pytest.approx(0.7001)
    assert found == [0.1, 0.5, 0.7, 0.7001]
    assert monitor.iterations == 4


def test_format_float_round_trips():
    value = 1 / 3
    assert float(format_float(value)) == value


def test_ensure_tuple():
    assert ensure_tuple('1 2  3') == ('1', '2', '3')
    assert ensure_tuple(['a']) == ('a',)
