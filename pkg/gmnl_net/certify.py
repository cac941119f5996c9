# -*- coding: utf-8 -*-
"""Реализация сертификатов суперактивации подлинной многосторонней нелокальности: сравнение
сетевой доли запутанности `F^Γ` с порогом `d^(-c)` (`c` — пропускная способность минимального
разреза сети), частный случай звезды, диагностика числа копий и нормированное нарушение.
"""

import logging
import math

from collections import namedtuple

from .games.khot_vishnoi import (
    KVParams, ScoreMethod, QUANTUM_EXACT_MAX_BITS,
    classical_bound, quantum_orbit_strategy_closed_form, quantum_orbit_strategy_score,
)
from .netgraph import NetworkGraph, min_cut
from .quantum.overlaps import network_fraction
from .utils import FrozenObject, InputError, format_float

REFERENCE_CONSTANTS = {
    'LHS_POVM': 0.625,
    'PM_model': 0.762,
    'triangle_required': 2 ** (-2 / 3),
}
DIAGNOSTIC_MAX_DIMENSION = 32
DIAGNOSTIC_ETA = 0.25

CERTIFIED = 'certified'
NOT_CERTIFIED = 'not-certified'

DiagnosticRow = namedtuple('DiagnosticRow', ('k', 'growth', 'quantum', 'value', 'bound', 'label'))


class DiagnosticReport(namedtuple('DiagnosticReport', ('rows', 'criterion_holds', 'message'))):
    """Отчёт о росте `(F d^c)^k` по числу копий и, где это вычислимо, сравнение
    `F^k Q_k^|E|` с границей для классических стратегий.
    """
    __slots__ = ()

    def to_records(self):
        lines = [f'k_diagnostic.criterion_holds={self.criterion_holds}',
                 f'k_diagnostic.message={self.message}']
        for row in self.rows:
            fields = [format_float(row.growth)]
            if row.value is not None:
                fields += [format_float(row.quantum), format_float(row.value),
                           format_float(row.bound)]
            lines.append(f'k_diagnostic.{row.k}={";".join(fields)};{row.label}')
        return lines


class Certificate(FrozenObject):
    """Сертификат: сетевая доля `F_gamma` сравнивается строго с порогом `d^(-c)`; вердикт и
    запас `margin = F_gamma - threshold` всегда согласованы по знаку.
    """
    CSV_HEADER = ('graph', 'd', 'c', 'F_gamma', 'threshold', 'margin', 'verdict')

    def __init__(self, graph, d, c, F_gamma, *, optimized=False, notes=(), k_diagnostic=None):
        threshold = float(d) ** (-c)
        super().__init__(
            graph=graph, d=d, c=c, F_gamma=float(F_gamma),
            threshold=threshold,
            margin=float(F_gamma) - threshold,
            verdict=CERTIFIED if F_gamma > threshold else NOT_CERTIFIED,
            optimized=optimized,
            notes=tuple(notes),
            k_diagnostic=k_diagnostic,
            reference_constants=dict(REFERENCE_CONSTANTS),
        )

    @property
    def certified(self):
        return self.verdict == CERTIFIED

    def to_records(self):
        """Плоская запись `ключ=значение` по строке на поле."""
        lines = [
            f'graph={self.graph}',
            f'd={self.d}',
            f'c={self.c}',
            f'F_gamma={format_float(self.F_gamma)}',
            f'threshold={format_float(self.threshold)}',
            f'margin={format_float(self.margin)}',
            f'verdict={self.verdict}',
            f'optimized={self.optimized}',
        ]
        lines += [f'ref.{name}={format_float(value)}'
                  for name, value in self.reference_constants.items()]
        lines += [f'note={note}' for note in self.notes]
        if self.k_diagnostic is not None:
            lines += self.k_diagnostic.to_records()
        return '\n'.join(lines) + '\n'

    def to_csv_row(self):
        return (self.graph, str(self.d), str(self.c), format_float(self.F_gamma),
                format_float(self.threshold), format_float(self.margin), self.verdict)


def certify_network_state(rho, assignment, *, optimize=False, k_max=None, **kwargs):
    """Сертификат для состояния, распределённого по сети: `c` — пропускная способность
    минимального разреза графа, `F^Γ` — сетевая доля (при `optimize=True` — нижняя оценка
    оптимума). Рёбра должны иметь одинаковую размерность.
    """
    d = assignment.uniform_dimension()
    capacity = min_cut(assignment.graph).capacity
    fraction = network_fraction(rho, assignment, optimize, **kwargs)
    notes = []
    if optimize:
        notes.append('F_gamma is a lower bound from local-unitary coordinate ascent')
    if capacity > 1:
        notes.append(
            f'min-cut capacity c={capacity} > 1: the star-network argument assumes c=1,'
            ' the general threshold d^-c is used'
        )
    diagnostic = None
    if k_max is not None:
        diagnostic = copy_number_diagnostic(
            fraction, d, capacity, k_max, edge_count=len(assignment.edges),
        )
    certificate = Certificate(
        assignment.graph.summary(), d, capacity, fraction,
        optimized=optimize, notes=notes, k_diagnostic=diagnostic,
    )
    logging.info(
        f'Network fraction {fraction:.12g} vs. threshold {certificate.threshold:.12g}:'
        f' {certificate.verdict}'
    )
    return certificate


def certify_star(fractions, d, *, k_max=None):
    """Сертификат для звезды из `M` рёбер с долями запутанности `F_i`: критерий `Π F_i > 1/d`
    (пропускная способность минимального разреза звезды равна 1).
    """
    fractions = [float(F) for F in fractions]
    if not fractions:
        raise InputError('Star certificate needs at least one edge fraction')
    if any(not 0 <= F <= 1 for F in fractions):
        raise InputError(f'Edge fractions must lie in [0, 1], got {fractions}')
    if d < 2:
        raise InputError(f'Local dimension must be at least 2, got {d}')
    F_gamma = math.prod(fractions)
    diagnostic = None
    if k_max is not None:
        diagnostic = copy_number_diagnostic(F_gamma, d, 1, k_max, edge_count=len(fractions))
    return Certificate(NetworkGraph.star(len(fractions)).summary(), d, 1, F_gamma,
                       k_diagnostic=diagnostic)


def copy_number_diagnostic(F_gamma, d, c, k_max, *, eta=DIAGNOSTIC_ETA, edge_count=None):
    """Диагностика по числу копий `k = 1..k_max`: последовательность `(F d^c)^k`. Если `d^k` —
    степень двойки не больше 32, дополнительно вычисляется `F^k Q_k^|E|` (`Q_k` — вероятность
    выигрыша квантовой стратегии в базисах орбит для `n = d^k`) и сравнивается с границей
    `n^(-c η/(1-η))`. За пределами вычислимого диапазона приводится только тренд. Нарушение
    границы никогда не утверждается сверх того, что показывают числа.
    """
    if not 0 < F_gamma <= 1:
        raise InputError(f'Network fraction must lie in (0, 1], got {F_gamma}')
    if k_max < 1:
        raise InputError(f'k_max must be positive, got {k_max}')
    edge_count = c if edge_count is None else edge_count
    rate = F_gamma * d ** c
    rows = []
    for k in range(1, k_max + 1):
        n = d ** k
        growth = rate ** k
        if n <= DIAGNOSTIC_MAX_DIMENSION and n & (n - 1) == 0 and n >= 2:
            params = KVParams(k=n.bit_length() - 1, L=c, eta=eta)
            single = KVParams(k=params.k, L=1, eta=eta)
            if single.bits <= QUANTUM_EXACT_MAX_BITS:
                quantum = quantum_orbit_strategy_score(single, ScoreMethod.EXACT).value
                label = 'computed'
            else:
                quantum = quantum_orbit_strategy_closed_form(single)
                label = 'closed-form'
            value = F_gamma ** k * quantum ** edge_count
            rows.append(DiagnosticRow(k, growth, quantum, value, classical_bound(params), label))
        else:
            rows.append(DiagnosticRow(k, growth, None, None, None, 'asymptotic indicator'))
    holds = rate > 1
    if holds:
        message = f'(F*d^c)={rate:.6g} > 1: the trend grows with k; constants are not estimated'
    else:
        message = f'(F*d^c)={rate:.6g} <= 1: the criterion fails and no copy number helps'
    return DiagnosticReport(rows=rows, criterion_holds=holds, message=message)


def normalized_violation(score, local_bound):
    """Нормированное нарушение `score / local_bound`."""
    if local_bound <= 0:
        raise InputError(f'Local bound must be positive, got {local_bound}')
    return score / local_bound
