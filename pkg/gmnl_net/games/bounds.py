# -*- coding: utf-8 -*-
"""Реализация вычисления локальной границы двусторонней игры полным перебором детерминированных
стратегий. Перебираются стратегии одного игрока (того, у кого их меньше), второй игрок отвечает
оптимально на каждый свой вход — максимум при этом совпадает с максимумом по всем парам стратегий.
Для игр с рациональными весами вычисления ведутся в целых числах и результат точен.
"""

import logging
import math

from collections import namedtuple
from fractions import Fraction

import numpy as np

from ..utils import LEVEL_PROGRESS, CapacityError, map_blocks
from .base_classes import is_exact

STRATEGY_BUDGET = 1 << 26
STRATEGY_BLOCK = 1 << 14

LocalOptimum = namedtuple('LocalOptimum', ('value', 'alice', 'bob'))


def local_bound_bruteforce(game, **kwargs):
    """Локальная граница `S_L` игры: максимум счёта по детерминированным стратегиям. Для точных
    игр возвращает `Fraction`, иначе `float`.
    """
    return optimal_local_strategies(game, **kwargs).value


def optimal_local_strategies(game, *, budget=STRATEGY_BUDGET, workers=1):
    """Находит локальную границу игры и пару детерминированных стратегий, на которой она
    достигается. Стратегии возвращаются как массивы `вход -> выход`; при равенстве значений
    выбирается стратегия перебираемого игрока с наименьшим номером.
    """
    a_size, b_size, x_size, y_size = game.alphabets
    alice_count, bob_count = a_size ** x_size, b_size ** y_size
    swapped = bob_count < alice_count
    enumerated = min(alice_count, bob_count)
    if enumerated > budget:
        raise CapacityError(
            f'Local bound of {game} needs {enumerated} deterministic strategies,'
            f' budget is {budget}'
        )

    weights, denominator = _integer_weights(game)
    if swapped:
        weights = weights.transpose(1, 0, 3, 2)
    out_size, in_size = weights.shape[0], weights.shape[2]

    starts = range(0, enumerated, STRATEGY_BLOCK)
    logging.log(
        LEVEL_PROGRESS,
        f'Enumerating {enumerated} strategies of {"Bob" if swapped else "Alice"}'
        f' for {game} in {len(starts)} blocks',
    )
    results = map_blocks(
        _evaluate_strategy_block,
        [
            (weights, out_size, in_size, start, min(start + STRATEGY_BLOCK, enumerated))
            for start in starts
        ],
        workers=workers,
    )
    best_value, best_index = results[0]
    for value, index in results[1:]:
        if value > best_value:
            best_value, best_index = value, index

    strategy = _strategy_digits(np.array([best_index]), out_size, in_size)[0]
    response = _best_response(weights, strategy)
    alice, bob = (response, strategy) if swapped else (strategy, response)
    if denominator is None:
        value = float(best_value)
    else:
        value = Fraction(int(best_value), denominator)
    logging.debug(f'Local bound of {game}: {value} at alice={alice}, bob={bob}')
    return LocalOptimum(value=value, alice=alice, bob=bob)


def _integer_weights(game):
    """Возвращает таблицу весов `G·p`: для точных игр — в целых числах вместе с общим
    знаменателем, иначе — в числах с плавающей точкой (знаменатель `None`).
    """
    weights = game.weights()
    if not is_exact(weights):
        return weights.astype(float), None
    denominator = math.lcm(*(value.denominator for value in weights.flat))
    scaled = [int(value * denominator) for value in weights.flat]
    bound = max(scaled) * max(game.alphabets[2], game.alphabets[3]) ** 2
    dtype = np.int64 if bound < (1 << 62) else object
    return np.array(scaled, dtype=dtype).reshape(weights.shape), denominator


def _strategy_digits(indices, out_size, in_size):
    """Переводит номера стратегий в таблицы `вход -> выход` (первый вход — старший разряд)."""
    powers = out_size ** np.arange(in_size - 1, -1, -1, dtype=np.int64)
    return (indices[:, np.newaxis] // powers[np.newaxis, :]) % out_size


def _response_values(weights, strategies):
    """Для каждой стратегии перебираемого игрока вычисляет таблицу `T[m, b, y]` — суммарный вес
    выхода `b` второго игрока на входе `y`.
    """
    in_size = weights.shape[2]
    return sum(weights[strategies[:, x], :, x, :] for x in range(in_size))


def _evaluate_strategy_block(weights, out_size, in_size, start, stop):
    """Лучшее значение и номер стратегии в блоке `[start, stop)`."""
    strategies = _strategy_digits(np.arange(start, stop, dtype=np.int64), out_size, in_size)
    values = _response_values(weights, strategies).max(axis=1).sum(axis=1)
    best = int(np.argmax(values))
    return values[best], start + best


def _best_response(weights, strategy):
    """Оптимальный ответ второго игрока на заданную стратегию (наименьший выход при равенстве)."""
    values = _response_values(weights, strategy[np.newaxis, :])[0]
    return np.argmax(values, axis=0)
