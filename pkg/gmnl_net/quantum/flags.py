# -*- coding: utf-8 -*-
"""Реализация протокола дистилляции с флагами: участники неразрушающим локальным измерением
флагового уровня узнают, какое ребро сети получило запутанную пару. После достаточного числа копий
каждое ребро с высокой вероятностью получает хотя бы одну пару (задача о собирателе купонов).
"""

import logging
import math

from collections import namedtuple
from fractions import Fraction

import numpy as np

from ..utils import InputError, make_rng
from .states import DensityOperator, place_pairs

FLAG_COMPONENT = 7

CoverageEstimate = namedtuple('CoverageEstimate', ('frequency', 'std_error', 'trials'))


def coverage_fraction(M, k):
    """Точная (рациональная) вероятность того, что `k` равновероятных выборов из `M` рёбер
    покрывают все рёбра: `Σ_j (-1)^j C(M, j) (1 - j/M)^k`.
    """
    if M < 1:
        raise InputError(f'Link count must be positive, got {M}')
    if k < 0:
        raise InputError(f'Copy count must be non-negative, got {k}')
    return sum(
        (-1) ** j * math.comb(M, j) * Fraction(M - j, M) ** k
        for j in range(M + 1)
    )


def coupon_collector_prob(M, k):
    """Вероятность покрытия всех `M` рёбер за `k` копий."""
    return float(coverage_fraction(M, k))


def copies_for_success(M, p):
    """Наименьшее число копий, при котором все `M` рёбер покрыты с вероятностью не меньше `p`."""
    if not 0 < p < 1:
        raise InputError(f'Success probability must lie in (0, 1), got {p}')
    target = Fraction(p)
    k = M
    while coverage_fraction(M, k) < target:
        k += 1
    return k


def simulate_flag_protocol(M, k, seed=None):
    """Разыгрывает `k` копий: в каждой запутанным оказывается равновероятно одно из `M` рёбер.
    Возвращает множество покрытых рёбер.
    """
    if M < 1 or k < 0:
        raise InputError(f'Need M >= 1 and k >= 0, got M={M}, k={k}')
    rng = make_rng(seed)
    return frozenset(int(link) for link in rng.integers(M, size=k))


def coverage_frequency(M, k, trials, seed=None):
    """Частота полного покрытия рёбер по `trials` независимым прогонам протокола."""
    if trials < 1:
        raise InputError(f'Trial count must be positive, got {trials}')
    rng = make_rng(seed, FLAG_COMPONENT)
    draws = rng.integers(M, size=(trials, k))
    covered = np.zeros((trials, M), dtype=bool)
    covered[np.arange(trials)[:, np.newaxis], draws] = True
    frequency = float(np.count_nonzero(covered.all(axis=1)) / trials)
    return CoverageEstimate(
        frequency=frequency,
        std_error=math.sqrt(frequency * (1 - frequency) / trials),
        trials=trials,
    )


def _not_flag_projector(D):
    projector = np.eye(D)
    projector[D - 1, D - 1] = 0
    return projector


def entangled_link_probability(rho, sys_a, sys_b):
    """Вероятность того, что локальные измерения `{1 - |f⟩⟨f|, |f⟩⟨f|}` (флаг `f` — старший
    уровень) на обеих подсистемах пары покажут отсутствие флага, то есть запутанное ребро.
    """
    pair = rho.partial_trace([sys_a, sys_b])
    D = pair.dims[0]
    if pair.dims != (D, D) or D < 3:
        raise InputError(f'Flagged pair needs equal dimensions d + 1 >= 3, got {pair.dims}')
    return pair.expectation(np.kron(_not_flag_projector(D), _not_flag_projector(D)))


def extract_link_state(rho, sys_a, sys_b):
    """Состояние пары после обнаружения запутанного ребра: блок уровней `0..d-1` обеих
    подсистем, нормированный на вероятность этого исхода.
    """
    probability = entangled_link_probability(rho, sys_a, sys_b)
    if probability <= 0:
        raise InputError(f'Link {sys_a}-{sys_b} is never entangled')
    pair = rho.partial_trace([sys_a, sys_b])
    d = pair.dims[0] - 1
    block = pair.matrix.reshape(d + 1, d + 1, d + 1, d + 1)[:d, :d, :d, :d]
    return DensityOperator(block.reshape(d * d, d * d) / probability, (d, d))


def product_of_links(link_states):
    """Произведение состояний рёбер звезды `⊗ρ_i` в порядке подсистем `A_1..A_M, B_1..B_M`."""
    link_states = list(link_states)
    if not link_states:
        raise InputError('Product of links needs at least one link state')
    M = len(link_states)
    logging.debug(f'Assembling product of {M} distilled links')
    return place_pairs(link_states, [(i, M + i) for i in range(M)], 2 * M)
