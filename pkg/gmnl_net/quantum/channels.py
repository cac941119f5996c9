# -*- coding: utf-8 -*-
"""Реализация привязки подсистем состояния к рёбрам графа сети, вектора `Φ^Γ` (произведения
максимально запутанных состояний по рёбрам) и изотропного твирлинга пар подсистем.
"""

import logging
import math

import numpy as np

from ..netgraph import NetworkGraph
from ..utils import InputError, UnsupportedError
from .states import (
    TRIANGLE_PAIRS, DensityOperator, isotropic, phi_plus_vector, place_pairs,
)


class EdgeAssignment:
    """Привязка рёбер графа к подсистемам: ребру `(i, j)` (`i < j`) соответствуют подсистема
    участника `i`, подсистема участника `j` и размерность `d` максимально запутанного состояния
    на этом ребре. Если подсистема имеет размерность больше `d`, `Φ+` занимает её уровни `0..d-1`.
    """

    def __init__(self, graph, mapping):
        self.graph = graph
        self.mapping = {}
        for edge, (sys_a, sys_b, d) in mapping.items():
            i, j = sorted(int(party) for party in edge)
            if (i, j) not in graph.edges:
                raise InputError(f'Edge {i}-{j} is not in {graph}')
            if d < 2:
                raise InputError(f'Edge {i}-{j} has dimension {d}, need at least 2')
            if edge[0] > edge[1]:
                sys_a, sys_b = sys_b, sys_a
            self.mapping[(i, j)] = (int(sys_a), int(sys_b), int(d))
        missing = set(graph.edges) - set(self.mapping)
        if missing:
            raise InputError(f'Edges {sorted(missing)} have no subsystems assigned')
        systems = [sys for sys_a, sys_b, _ in self.mapping.values() for sys in (sys_a, sys_b)]
        if len(set(systems)) != len(systems):
            raise InputError(f'Subsystems {systems} are assigned to more than one edge end')
        if sorted(systems) != list(range(len(systems))):
            raise InputError(f'Subsystems {sorted(systems)} must be numbered 0..{len(systems) - 1}')

    def __repr__(self):
        return f'EdgeAssignment({self.graph.summary()}; {self.mapping})'

    @property
    def edges(self):
        return self.graph.edges

    @property
    def subsystems(self):
        return 2 * len(self.mapping)

    @property
    def dimension(self):
        """Общая размерность рёбер либо `None`, если рёбра имеют разные размерности."""
        dims = {d for _, _, d in self.mapping.values()}
        return dims.pop() if len(dims) == 1 else None

    def owner(self, sys):
        """Участник, которому принадлежит подсистема."""
        for (i, j), (sys_a, sys_b, _) in self.mapping.items():
            if sys == sys_a:
                return i
            if sys == sys_b:
                return j
        raise InputError(f'Subsystem {sys} is not assigned')

    def check(self, rho):
        """Проверяет согласованность привязки с состоянием."""
        if rho.subsystems != self.subsystems:
            raise InputError(
                f'{rho} has {rho.subsystems} subsystems, assignment covers {self.subsystems}'
            )
        for edge, (sys_a, sys_b, d) in self.mapping.items():
            if rho.dims[sys_a] != rho.dims[sys_b]:
                raise InputError(
                    f'Edge {edge} joins subsystems of dimensions'
                    f' {rho.dims[sys_a]} and {rho.dims[sys_b]}'
                )
            if rho.dims[sys_a] < d:
                raise InputError(f'Edge {edge} of dimension {d} exceeds subsystem {rho.dims[sys_a]}')

    def uniform_dimension(self):
        d = self.dimension
        if d is None:
            raise UnsupportedError(f'Edges of {self.graph.summary()} have mixed dimensions')
        return d


def sigma_star_assignment(M, d):
    """Привязка для звезды из `M` листьев: центр 0 владеет подсистемами `A_1..A_M`
    (индексы `0..M-1`), лист `i` — подсистемой `B_i` (индекс `M+i-1`).
    """
    graph = NetworkGraph.star(M)
    return EdgeAssignment(graph, {(0, leaf): (leaf - 1, M + leaf - 1, d) for leaf in range(1, M + 1)})


def triangle_assignment(d=2):
    """Привязка для треугольника с подсистемами `A1, A2, B1, B2, C1, C2` (индексы 0..5)."""
    graph = NetworkGraph.complete(3)
    (a2, b1), (b2, c1), (c2, a1) = TRIANGLE_PAIRS
    return EdgeAssignment(graph, {(0, 1): (a2, b1, d), (1, 2): (b2, c1, d), (0, 2): (a1, c2, d)})


def isotropic_network_state(graph, fractions, d=2):
    """Произведение изотропных состояний по рёбрам графа (в порядке `graph.edges`) и его привязка:
    ребру с номером `e` соответствуют подсистемы `2e` и `2e + 1`. Одно значение `fractions`
    применяется ко всем рёбрам.
    """
    if np.ndim(fractions) == 0:
        fractions = [fractions] * len(graph.edges)
    fractions = list(fractions)
    if len(fractions) != len(graph.edges):
        raise InputError(f'Got {len(fractions)} fractions for {len(graph.edges)} edges')
    pairs = [(2 * num, 2 * num + 1) for num in range(len(graph.edges))]
    rho = place_pairs([isotropic(F, d) for F in fractions], pairs, 2 * len(pairs))
    assignment = EdgeAssignment(
        graph, {edge: (sys_a, sys_b, d) for edge, (sys_a, sys_b) in zip(graph.edges, pairs)},
    )
    return rho, assignment


def phi_gamma_vector(assignment, dims, unitaries=None):
    """Вектор `Φ^Γ` в порядке подсистем состояния с размерностями `dims`. Если заданы унитарные
    операторы `unitaries[edge]`, они применяются к подсистеме участника `i` каждого ребра.
    """
    tensor = np.ones((), dtype=complex)
    current = []
    for edge in assignment.edges:
        sys_a, sys_b, d = assignment.mapping[edge]
        D = dims[sys_a]
        pair = np.zeros((D, D), dtype=complex)
        block = np.eye(d) if unitaries is None else unitaries[edge]
        pair[:d, :d] = block / math.sqrt(d)
        tensor = np.multiply.outer(tensor, pair)
        current += [sys_a, sys_b]
    tensor = tensor.transpose([current.index(sys) for sys in range(len(current))])
    return tensor.reshape(-1)


def twirl_pair(rho, sys_a, sys_b):
    """Изотропный твирлинг пары подсистем: пара переходит в
    `Φ+ ⊗ X_Φ + (1 - Φ+)/(d^2 - 1) ⊗ X_⊥`, где `X_Φ = ⟨Φ+|ρ|Φ+⟩`, `X_⊥ = Tr_пары((1 - Φ+)ρ)` —
    операторы на остальных подсистемах. Когерентность между парой и остальными подсистемами
    при этом исчезает.
    """
    if sys_a == sys_b:
        raise InputError(f'Twirl needs two distinct subsystems, got {sys_a} twice')
    d = rho.dims[sys_a]
    if rho.dims[sys_b] != d:
        raise InputError(f'Twirled subsystems have dimensions {d} and {rho.dims[sys_b]}')
    others = [sys for sys in range(rho.subsystems) if sys not in (sys_a, sys_b)]
    order = [sys_a, sys_b] + others
    permuted = rho.permute(order)
    rest = rho.dimension // (d * d)
    tensor = permuted.matrix.reshape(d * d, rest, d * d, rest)
    phi = phi_plus_vector(d)
    block_phi = np.einsum('p,prqs,q->rs', phi.conj(), tensor, phi)
    block_rest = np.einsum('prps->rs', tensor) - block_phi
    projector = np.outer(phi, phi.conj())
    complement = (np.eye(d * d) - projector) / (d * d - 1)
    matrix = np.kron(projector, block_phi) + np.kron(complement, block_rest)
    twirled = DensityOperator(matrix, permuted.dims)
    return twirled.permute([order.index(sys) for sys in range(rho.subsystems)])


def network_twirl(rho, assignment):
    """Твирлинг всех рёбер сети. Размерность рёбер должна совпадать с размерностью подсистем."""
    assignment.check(rho)
    for edge, (sys_a, sys_b, d) in assignment.mapping.items():
        if rho.dims[sys_a] != d:
            raise InputError(
                f'Edge {edge} of dimension {d} is embedded into subsystems of dimension'
                f' {rho.dims[sys_a]}; twirling needs equal dimensions'
            )
        rho = twirl_pair(rho, sys_a, sys_b)
    logging.debug(f'Twirled {len(assignment.edges)} edges of {assignment.graph.summary()}')
    return rho


def twirl_remainder(rho, assignment):
    """Остаток `(ρ - F^Γ Φ^Γ)/(1 - F^Γ)` разложения состояния по `Φ^Γ` (не обязательно
    положительно полуопределённый) и канонический `F^Γ`.
    """
    assignment.check(rho)
    vector = phi_gamma_vector(assignment, rho.dims)
    fraction = float(np.real(vector.conj() @ rho.matrix @ vector))
    if fraction >= 1:
        raise InputError(f'{rho} coincides with the network state, no remainder')
    remainder = (rho.matrix - fraction * np.outer(vector, vector.conj())) / (1 - fraction)
    return remainder, fraction
