# -*- coding: utf-8 -*-
"""Реализация базовых классов для двусторонних игр Белла, поведений (условных распределений
выходов при заданных входах) и их параллельных повторений.
"""

import itertools

from fractions import Fraction
from numbers import Rational

import numpy as np

from ..utils import CapacityError, InputError

MAX_EXACT_DENOMINATOR = 1 << 20
MAX_TABLE_SIZE = 1 << 18
NORMALIZATION_TOLERANCE = 1e-10
DISTRIBUTION_TOLERANCE = 1e-12


def to_exact(value):
    """Переводит число в рациональное, если оно представимо дробью с небольшим знаменателем
    (например, 0.25 или 1/4); иначе возвращает `None`.
    """
    if isinstance(value, (bool, np.bool_)):
        return Fraction(int(value))
    if isinstance(value, (Rational, np.integer)):
        return Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
    value = float(value)
    if not np.isfinite(value):
        return None
    candidate = Fraction(value).limit_denominator(MAX_EXACT_DENOMINATOR)
    if float(candidate) != value:
        return None
    return candidate


def make_table(values):
    """Строит таблицу значений: массив рациональных чисел (dtype=object), если все значения
    представимы точно, иначе массив чисел с плавающей точкой.
    """
    array = np.asarray(values)
    if array.dtype == object or array.dtype.kind in 'biuf':
        exact = [to_exact(value) for value in array.flat]
        if all(value is not None for value in exact):
            result = np.empty(array.shape, dtype=object)
            result.flat[:] = exact
            return result
    return np.asarray(values, dtype=float)


def is_exact(table):
    return table.dtype == object


class BellGame:
    """Двусторонняя игра Белла: таблица выигрыша `G[a,b,x,y] ∈ [0,1]` и распределение входов
    `p(x,y)`. Размеры алфавитов определяются формой таблицы: `(|A|, |B|, |X|, |Y|)`.
    """

    def __init__(self, win, distribution):
        win = make_table(win)
        distribution = make_table(distribution)
        if win.ndim != 4:
            raise InputError(f'Win table must have 4 axes (a, b, x, y), got shape {win.shape}')
        if distribution.shape != win.shape[2:]:
            raise InputError(
                f'Input distribution shape {distribution.shape} mismatches'
                f' input alphabets {win.shape[2:]}'
            )
        if any(value < 0 or value > 1 for value in win.flat):
            raise InputError('Win table entries must lie in [0, 1]')
        if any(value < 0 for value in distribution.flat):
            raise InputError('Input distribution must be nonnegative')
        total = distribution.sum()
        if abs(float(total) - 1) > DISTRIBUTION_TOLERANCE:
            raise InputError(f'Input distribution must be normalized, got total {total}')
        if is_exact(win) != is_exact(distribution):
            win, distribution = win.astype(float), distribution.astype(float)
        win.setflags(write=False)
        distribution.setflags(write=False)
        self.win = win
        self.distribution = distribution

    def __repr__(self):
        kind = 'exact' if self.exact else 'float'
        return f'BellGame(alphabets={self.alphabets}, {kind})'

    @property
    def alphabets(self):
        """Размеры алфавитов `(|A|, |B|, |X|, |Y|)`."""
        return self.win.shape

    @property
    def exact(self):
        return is_exact(self.win)

    def weights(self):
        """Таблица весов `G[a,b,x,y] p(x,y)`, по которой вычисляется счёт."""
        return self.win * self.distribution[np.newaxis, np.newaxis, :, :]

    def is_symmetric(self):
        """Проверяет симметричность игры относительно перестановки игроков."""
        a_size, b_size, x_size, y_size = self.alphabets
        if a_size != b_size or x_size != y_size:
            return False
        return (
            np.array_equal(self.win, self.win.transpose(1, 0, 3, 2))
            and np.array_equal(self.distribution, self.distribution.T)
        )


class Behavior:
    """Поведение `N` участников: таблица `P(a_1..a_N | x_1..x_N)` с осями
    `(a_1, ..., a_N, x_1, ..., x_N)`. Для каждого набора входов распределение выходов нормировано.
    """

    def __init__(self, probabilities, *, tolerance=NORMALIZATION_TOLERANCE):
        probabilities = np.asarray(probabilities, dtype=float)
        if probabilities.ndim < 2 or probabilities.ndim % 2:
            raise InputError(
                f'Behavior table must have 2N axes (outputs, inputs), got {probabilities.ndim}'
            )
        if (probabilities < 0).any():
            raise InputError('Behavior probabilities must be nonnegative')
        N = probabilities.ndim // 2
        totals = probabilities.sum(axis=tuple(range(N)))
        if not np.allclose(totals, 1, rtol=0, atol=tolerance):
            worst = np.max(np.abs(totals - 1))
            raise InputError(f'Behavior is not normalized: deviation up to {worst:.3g}')
        probabilities.setflags(write=False)
        self.probabilities = probabilities

    def __repr__(self):
        return f'Behavior(outputs={self.outputs}, inputs={self.inputs})'

    @property
    def N(self):
        return self.probabilities.ndim // 2

    @property
    def outputs(self):
        return self.probabilities.shape[:self.N]

    @property
    def inputs(self):
        return self.probabilities.shape[self.N:]

    @classmethod
    def deterministic(cls, strategies, outputs):
        """Детерминированное поведение: участник `i` на вход `x` выдаёт `strategies[i][x]`.
        Размеры входных алфавитов определяются длинами стратегий.
        """
        strategies = [np.asarray(strategy, dtype=int) for strategy in strategies]
        if len(strategies) != len(outputs):
            raise InputError(f'Got {len(strategies)} strategies for {len(outputs)} parties')
        inputs = tuple(len(strategy) for strategy in strategies)
        probabilities = np.zeros(tuple(outputs) + inputs)
        for x in itertools.product(*(range(size) for size in inputs)):
            a = tuple(int(strategy[xi]) for strategy, xi in zip(strategies, x))
            probabilities[a + x] = 1
        return cls(probabilities)

    @classmethod
    def mixture(cls, behaviors, weights):
        """Выпуклая комбинация поведений с одинаковыми алфавитами."""
        behaviors = list(behaviors)
        weights = np.asarray(weights, dtype=float)
        if len(behaviors) != len(weights) or not behaviors:
            raise InputError('Mixture needs equal nonzero numbers of behaviors and weights')
        if (weights < 0).any() or abs(weights.sum() - 1) > DISTRIBUTION_TOLERANCE:
            raise InputError(f'Mixture weights must form a distribution, got {weights}')
        shape = behaviors[0].probabilities.shape
        if any(behavior.probabilities.shape != shape for behavior in behaviors):
            raise InputError('Mixed behaviors must share alphabets')
        return cls(sum(w * behavior.probabilities for w, behavior in zip(weights, behaviors)))


def chsh():
    """Игра CHSH: двоичные входы и выходы, выигрыш при `a ⊕ b = x·y`, равномерные входы."""
    win = np.zeros((2, 2, 2, 2), dtype=int)
    for a, b, x, y in itertools.product(range(2), repeat=4):
        win[a, b, x, y] = int((a ^ b) == (x & y))
    return BellGame(win, np.full((2, 2), Fraction(1, 4), dtype=object))


def pr_box():
    """Поведение PR-ящика: всегда выигрывает в CHSH, `P(a,b|x,y) = 1/2` при `a ⊕ b = x·y`."""
    probabilities = np.zeros((2, 2, 2, 2))
    for a, b, x, y in itertools.product(range(2), repeat=4):
        if (a ^ b) == (x & y):
            probabilities[a, b, x, y] = 0.5
    return Behavior(probabilities)


def score(game, behavior):
    """Счёт двустороннего поведения в игре: `S = Σ G[a,b,x,y] P(a,b|x,y) p(x,y)`."""
    if behavior.N != 2:
        raise InputError(f'Bipartite game needs a 2-party behavior, got {behavior.N} parties')
    if behavior.probabilities.shape != game.alphabets:
        raise InputError(
            f'Behavior alphabets {behavior.probabilities.shape} mismatch game {game.alphabets}'
        )
    return float(np.sum(game.weights().astype(float) * behavior.probabilities))


def krep(game, k, *, max_table_size=MAX_TABLE_SIZE):
    """`k`-кратное параллельное повторение игры: входы — наборы из `k` независимых пар, выигрыш
    равен произведению выигрышей в отдельных экземплярах. Составной индекс входа/выхода
    упорядочен так, что первый экземпляр занимает старший разряд.
    """
    if k < 1:
        raise InputError(f'Repetition count must be positive, got {k}')
    table_size = int(np.prod(game.alphabets)) ** k
    if table_size > max_table_size:
        raise CapacityError(
            f'{k}-repetition of {game} needs a table of {table_size} entries,'
            f' budget is {max_table_size}'
        )
    win, distribution = game.win, game.distribution
    for _ in range(k - 1):
        win = _product_table(win, game.win, axes=4)
        distribution = _product_table(distribution, game.distribution, axes=2)
    return BellGame(win, distribution)


def _product_table(first, second, *, axes):
    """Тензорное произведение таблиц с попарным слиянием осей: ось `i` результата нумерует пары
    `(i-я ось first, i-я ось second)`.
    """
    outer = np.multiply.outer(first, second)
    order = [axis for pair in zip(range(axes), range(axes, 2 * axes)) for axis in pair]
    shape = tuple(first.shape[axis] * second.shape[axis] for axis in range(axes))
    return outer.transpose(order).reshape(shape)
