# -*- coding: utf-8 -*-
"""Реализация сетевого расширения двусторонней игры: на каждом ребре графа сети разыгрывается
отдельный экземпляр игры, общий выигрыш равен произведению выигрышей по рёбрам. Также реализован
перебор бисепарабельных (би-произведенческих) моделей и критерий подлинной многосторонней
нелокальности через пропускную способность минимального разреза.
"""

import logging

from collections import namedtuple

import numpy as np

from ..netgraph import iter_bipartitions, min_cut
from ..utils import CapacityError, InputError, UnsupportedError
from .base_classes import Behavior, BellGame, krep, make_table
from .bounds import STRATEGY_BUDGET, local_bound_bruteforce, optimal_local_strategies

MAX_NETWORK_TABLE_SIZE = 1 << 22
BISEPARABLE_MAX_PARTIES = 5

Slot = namedtuple('Slot', ('edge', 'neighbor'))
EdgeSlots = namedtuple('EdgeSlots', ('i', 'slot_i', 'j', 'slot_j'))
BiseparableBound = namedtuple('BiseparableBound', ('value', 'bipartition'))
CutBoundVerdict = namedtuple(
    'CutBoundVerdict',
    ('score', 'threshold', 'margin', 'capacity', 'certified'),
)


class NetworkGame:
    """Сетевое расширение симметричной игры `G` по графу сети. Слоты участника (по одному на
    инцидентное ребро) упорядочены по возрастанию номера соседа; составной вход/выход участника
    нумеруется так, что первый слот занимает старший разряд.
    """

    def __init__(self, game, graph, *, max_table_size=MAX_NETWORK_TABLE_SIZE):
        if not game.is_symmetric():
            raise UnsupportedError(
                f'{game} is not symmetric under the exchange of players;'
                ' directed network games are not supported'
            )
        self.game = game
        self.graph = graph
        self.slots = tuple(
            tuple(Slot(edge=_edge_index(graph, party, neighbor), neighbor=neighbor)
                  for neighbor in graph.neighbors(party))
            for party in range(graph.N)
        )
        self.edge_slots = tuple(
            EdgeSlots(
                i=i, slot_i=graph.neighbors(i).index(j),
                j=j, slot_j=graph.neighbors(j).index(i),
            )
            for i, j in graph.edges
        )
        out_size, _, in_size, _ = game.alphabets
        self.outputs = tuple(out_size ** len(slots) for slots in self.slots)
        self.inputs = tuple(in_size ** len(slots) for slots in self.slots)
        table_size = int(np.prod(self.outputs, dtype=object) * np.prod(self.inputs, dtype=object))
        if table_size > max_table_size:
            raise CapacityError(
                f'Network game over {graph} needs behavior tables of {table_size} entries,'
                f' budget is {max_table_size}'
            )
        self._win = self._distribution = None

    def __repr__(self):
        return f'NetworkGame({self.game}, {self.graph})'

    @property
    def N(self):
        return self.graph.N

    def win_tensor(self):
        """Таблица выигрыша сетевой игры с осями `(a_1..a_N, x_1..x_N)`: произведение выигрышей
        по всем рёбрам.
        """
        if self._win is None:
            self._win = self._edge_product(self.game.win, with_outputs=True)
        return self._win

    def distribution_tensor(self):
        """Распределение составных входов с осями `(x_1..x_N)`: входы рёбер независимы."""
        if self._distribution is None:
            self._distribution = self._edge_product(self.game.distribution, with_outputs=False)
        return self._distribution

    def weight_tensor(self):
        """Таблица весов `Π_e G p`, по которой вычисляется сетевой счёт."""
        N = self.N
        distribution = self.distribution_tensor()
        return self.win_tensor() * distribution.reshape((1,) * N + distribution.shape)

    def _edge_product(self, table, *, with_outputs):
        """Произведение по рёбрам значений `table`, индексированных цифрами составных индексов
        участников. Для таблицы выигрыша оси таблицы — `(a_i, a_j, x_i, x_j)`, для распределения —
        `(x_i, x_j)`.
        """
        N = self.N
        out_size, _, in_size, _ = self.game.alphabets
        shape = (self.outputs + self.inputs) if with_outputs else self.inputs
        result = None
        for edge in self.edge_slots:
            in_i = _slot_digits(self.inputs[edge.i], in_size, len(self.slots[edge.i]), edge.slot_i)
            in_j = _slot_digits(self.inputs[edge.j], in_size, len(self.slots[edge.j]), edge.slot_j)
            if with_outputs:
                out_i = _slot_digits(
                    self.outputs[edge.i], out_size, len(self.slots[edge.i]), edge.slot_i,
                )
                out_j = _slot_digits(
                    self.outputs[edge.j], out_size, len(self.slots[edge.j]), edge.slot_j,
                )
                values = table[np.ix_(out_i, out_j, in_i, in_j)]
                axes = (edge.i, edge.j, N + edge.i, N + edge.j)
            else:
                values = table[np.ix_(in_i, in_j)]
                axes = (edge.i, edge.j)
            target = [1] * len(shape)
            for axis, size in zip(axes, values.shape):
                target[axis] = size
            values = values.reshape(target)
            result = values if result is None else result * values
        return np.broadcast_to(result, shape).copy()


def _edge_index(graph, party, neighbor):
    return graph.edges.index((min(party, neighbor), max(party, neighbor)))


def _slot_digits(size, base, slots, slot):
    """Для всех составных индексов `0..size-1` возвращает цифру, соответствующую слоту `slot`."""
    return (np.arange(size) // base ** (slots - 1 - slot)) % base


def network_game(game, graph, **kwargs):
    """Строит сетевое расширение симметричной двусторонней игры по графу сети."""
    return NetworkGame(game, graph, **kwargs)


def network_score(ng, behavior):
    """Сетевой счёт поведения: математическое ожидание произведения выигрышей по рёбрам при
    независимых входах рёбер.
    """
    if behavior.N != ng.N:
        raise InputError(f'Behavior has {behavior.N} parties, network has {ng.N}')
    if behavior.outputs != ng.outputs or behavior.inputs != ng.inputs:
        raise InputError(
            f'Behavior alphabets {behavior.outputs}/{behavior.inputs} mismatch'
            f' network slot structure {ng.outputs}/{ng.inputs}'
        )
    return float(np.sum(ng.weight_tensor().astype(float) * behavior.probabilities))


def product_behavior(ng, edge_behavior):
    """Поведение, в котором каждое ребро независимо реализует одно и то же двустороннее
    поведение `edge_behavior` на своих слотах.
    """
    if edge_behavior.N != 2 or edge_behavior.probabilities.shape != ng.game.alphabets:
        raise InputError(f'Edge behavior {edge_behavior} mismatches base game {ng.game}')
    probabilities = ng._edge_product(edge_behavior.probabilities, with_outputs=True)
    return Behavior(probabilities)


def deterministic_network_behavior(ng, strategies):
    """Детерминированное сетевое поведение: участник `i` отображает составной вход в составной
    выход по таблице `strategies[i]`.
    """
    return Behavior.deterministic(strategies, ng.outputs)


def merged_game(ng, group):
    """Двусторонняя игра между группой участников `group` и её дополнением, в которой каждая
    группа объединена в одного игрока (внутри группы возможен произвольный обмен информацией).
    Составной вход/выход группы перечисляет участников группы по возрастанию номеров.
    """
    group, rest = _split_parties(ng, group)
    N = ng.N
    order = list(group) + list(rest) + [N + i for i in group] + [N + i for i in rest]
    sizes = lambda parties, alphabet: int(np.prod([alphabet[i] for i in parties]))
    shape = (
        sizes(group, ng.outputs), sizes(rest, ng.outputs),
        sizes(group, ng.inputs), sizes(rest, ng.inputs),
    )
    win = ng.win_tensor().transpose(order).reshape(shape)
    distribution = ng.distribution_tensor().transpose(list(group) + list(rest))
    distribution = distribution.reshape(shape[2:])
    return BellGame(make_table(win), make_table(distribution))


def biseparable_bound_bruteforce(ng, *, budget=STRATEGY_BUDGET, workers=1):
    """Максимум сетевого счёта по бисепарабельным моделям: для каждого разбиения участников на две
    группы вычисляется локальная граница объединённой игры. Детерминированных стратегий достаточно
    в силу выпуклости. Из равных разбиений выбирается первое в лексикографическом порядке групп,
    содержащих участника 0.
    """
    if ng.N > BISEPARABLE_MAX_PARTIES:
        raise CapacityError(
            f'Biseparable enumeration supports at most {BISEPARABLE_MAX_PARTIES} parties,'
            f' got {ng.N}'
        )
    best = None
    for group in iter_bipartitions(ng.N):
        value = local_bound_bruteforce(merged_game(ng, group), budget=budget, workers=workers)
        logging.debug(f'Biseparable bound of {ng} over {group}: {value}')
        if best is None or value > best.value:
            best = BiseparableBound(value=value, bipartition=_split_parties(ng, group))
    return best


def biproduct_behavior(ng, group, group_strategy, rest_strategy):
    """Би-произведенческое поведение: группа `group` и её дополнение отвечают по детерминированным
    стратегиям объединённых игроков (`составной вход группы -> составной выход группы`).
    """
    group, rest = _split_parties(ng, group)
    N = ng.N
    group_strategy = np.asarray(group_strategy, dtype=int)
    rest_strategy = np.asarray(rest_strategy, dtype=int)
    for parties, strategy in ((group, group_strategy), (rest, rest_strategy)):
        if len(strategy) != int(np.prod([ng.inputs[i] for i in parties])):
            raise InputError(f'Strategy of group {parties} has {len(strategy)} inputs')
    merged = np.zeros((
        int(np.prod([ng.outputs[i] for i in group])), int(np.prod([ng.outputs[i] for i in rest])),
        len(group_strategy), len(rest_strategy),
    ))
    merged[
        group_strategy[:, np.newaxis], rest_strategy[np.newaxis, :],
        np.arange(len(group_strategy))[:, np.newaxis], np.arange(len(rest_strategy))[np.newaxis, :],
    ] = 1
    parties = list(group) + list(rest)
    unmerged_shape = (
        [ng.outputs[i] for i in parties] + [ng.inputs[i] for i in parties]
    )
    order = list(group) + list(rest) + [N + i for i in group] + [N + i for i in rest]
    probabilities = merged.reshape(unmerged_shape).transpose(np.argsort(order))
    return Behavior(probabilities)


def optimal_biproduct_behavior(ng, group, **kwargs):
    """Би-произведенческое поведение, достигающее локальной границы объединённой игры для
    разбиения с группой `group`.
    """
    optimum = optimal_local_strategies(merged_game(ng, group), **kwargs)
    return biproduct_behavior(ng, group, optimum.alice, optimum.bob)


def certify_cut_bound(ng, behavior, *, repetition_bound=None, budget=STRATEGY_BUDGET):
    """Критерий подлинной многосторонней нелокальности: поведение сертифицировано, если его сетевой
    счёт строго больше локальной границы `c`-кратного повторения базовой игры, где `c` —
    пропускная способность минимального разреза графа. Граница берётся из `repetition_bound`
    (число или функция от `c`), либо вычисляется перебором.
    """
    capacity = min_cut(ng.graph).capacity
    if repetition_bound is None:
        try:
            threshold = local_bound_bruteforce(krep(ng.game, capacity), budget=budget)
        except CapacityError as exc:
            raise UnsupportedError(
                f'No local bound available for the {capacity}-repetition of {ng.game}: {exc}'
            )
    elif callable(repetition_bound):
        threshold = repetition_bound(capacity)
    else:
        threshold = repetition_bound
    value = network_score(ng, behavior)
    certified = value > threshold
    logging.info(
        f'Network score {value:.12g} vs. local bound {float(threshold):.12g}'
        f' of {capacity}-repetition: {"certified" if certified else "not certified"}'
    )
    return CutBoundVerdict(
        score=value,
        threshold=threshold,
        margin=value - float(threshold),
        capacity=capacity,
        certified=certified,
    )


def _split_parties(ng, group):
    group = tuple(sorted(set(int(party) for party in group)))
    if not group or len(group) >= ng.N or group[0] < 0 or group[-1] >= ng.N:
        raise InputError(f'Group {group} must be a nonempty proper subset of {ng.N} parties')
    rest = tuple(party for party in range(ng.N) if party not in group)
    return group, rest
