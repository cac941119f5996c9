# -*- coding: utf-8 -*-
"""Реализация графов сети (неориентированных, с единичными весами рёбер), разрезов и поиска
глобального минимального разреза.
"""

import itertools
import logging
import re

import networkx as nx
import numpy as np

from .utils import CapacityError, InputError

BRUTEFORCE_MAX_PARTIES = 20


class NetworkGraph:
    """Граф сети из `N >= 2` участников, заданный симметричной 0/1 матрицей смежности без петель.
    Несвязные графы не допускаются: для них пропускная способность минимального разреза равна 0,
    что делает все оценки тривиальными.
    """
    names = {
        'triangle': lambda: NetworkGraph.complete(3),
    }
    _NAME_PATTERN = re.compile(r'^(star|complete|path|cycle)(\d+)$')

    def __init__(self, adjacency):
        adjacency = np.array(adjacency, dtype=np.int8)
        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
            raise InputError(f'Adjacency matrix must be square, got shape {adjacency.shape}')
        if adjacency.shape[0] < 2:
            raise InputError(f'Network must have at least 2 parties, got {adjacency.shape[0]}')
        if not np.isin(adjacency, (0, 1)).all():
            raise InputError('Adjacency matrix must contain only zeros and ones')
        if (adjacency != adjacency.T).any():
            raise InputError('Adjacency matrix must be symmetric')
        if np.diagonal(adjacency).any():
            raise InputError('Adjacency matrix must have zero diagonal (no self-loops)')
        adjacency.setflags(write=False)
        self.adjacency = adjacency
        self.edges = tuple(
            (i, j)
            for i in range(self.N)
            for j in range(i + 1, self.N)
            if adjacency[i, j]
        )
        if not nx.is_connected(self.to_networkx()):
            raise InputError(f'Network graph {self.edges} is disconnected')

    def __repr__(self):
        return f'NetworkGraph(N={self.N}, edges={list(self.edges)})'

    def __eq__(self, other):
        if not isinstance(other, NetworkGraph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.edges)

    @property
    def N(self):
        return self.adjacency.shape[0]

    def neighbors(self, party):
        """Соседи участника в порядке возрастания номеров (этот же порядок задаёт порядок слотов
        участника в сетевой игре).
        """
        return tuple(int(j) for j in np.flatnonzero(self.adjacency[party]))

    def degree(self, party):
        return len(self.neighbors(party))

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.N))
        graph.add_edges_from(self.edges)
        return graph

    def with_edge(self, i, j):
        """Возвращает граф с добавленным ребром."""
        adjacency = self.adjacency.copy()
        adjacency[i, j] = adjacency[j, i] = 1
        return NetworkGraph(adjacency)

    def summary(self):
        """Краткое текстовое описание для отчётов."""
        edges = ' '.join(f'{i}-{j}' for i, j in self.edges)
        return f'N={self.N}; E={edges}'

    @classmethod
    def from_edges(cls, edges, N=None):
        """Строит граф по списку рёбер; число участников по умолчанию определяется рёбрами."""
        edges = [(int(i), int(j)) for i, j in edges]
        if not edges:
            raise InputError('Edge list is empty')
        if N is None:
            N = 1 + max(max(edge) for edge in edges)
        adjacency = np.zeros((N, N), dtype=np.int8)
        for i, j in edges:
            if i == j:
                raise InputError(f'Self-loop on party {i}')
            if not (0 <= i < N and 0 <= j < N):
                raise InputError(f'Edge {i}-{j} is out of range for {N} parties')
            adjacency[i, j] = adjacency[j, i] = 1
        return cls(adjacency)

    @classmethod
    def star(cls, leaves):
        return cls.from_edges([(0, leaf) for leaf in range(1, leaves + 1)])

    @classmethod
    def complete(cls, N):
        return cls.from_edges(itertools.combinations(range(N), 2))

    @classmethod
    def path(cls, N):
        return cls.from_edges((i, i + 1) for i in range(N - 1))

    @classmethod
    def cycle(cls, N):
        return cls.from_edges([(i, (i + 1) % N) for i in range(N)])

    @classmethod
    def by_name(cls, name):
        """Создаёт граф по имени: `triangle`, `star<M>`, `complete<N>`, `path<N>`, `cycle<N>`."""
        if name in cls.names:
            return cls.names[name]()
        match = cls._NAME_PATTERN.match(name)
        if match is None:
            raise InputError(f'Unknown graph name "{name}"')
        return getattr(cls, match.group(1))(int(match.group(2)))

    @classmethod
    def random_connected(cls, N, edge_probability, rng):
        """Генерирует случайный связный граф (модель Эрдёша–Реньи с отбраковкой несвязных)."""
        while True:
            seed = int(rng.integers(2 ** 32))
            graph = nx.gnp_random_graph(N, edge_probability, seed=seed)
            if graph.number_of_edges() and nx.is_connected(graph):
                return cls.from_edges(graph.edges(), N=N)


class Cut:
    """Разрез графа: непустое собственное подмножество участников `S`, множество рёбер с ровно
    одним концом в `S` и его размер (пропускная способность при единичных весах).
    """
    __slots__ = ('subset', 'cut_set', 'capacity')

    def __init__(self, graph, subset):
        subset = frozenset(int(party) for party in subset)
        if not subset or len(subset) >= graph.N or not subset <= set(range(graph.N)):
            raise InputError(f'Cut subset {sorted(subset)} must be a nonempty proper subset')
        self.subset = subset
        self.cut_set = tuple(edge for edge in graph.edges if (edge[0] in subset) != (edge[1] in subset))
        self.capacity = len(self.cut_set)

    def __repr__(self):
        return f'Cut(S={sorted(self.subset)}, capacity={self.capacity})'

    def complement(self, graph):
        return Cut(graph, set(range(graph.N)) - self.subset)


def cut_capacity(graph, subset):
    """Число рёбер, пересекающих разрез `S | S̄`."""
    return Cut(graph, subset).capacity


def min_cut(graph):
    """Глобальный минимальный разрез по алгоритму Стоер–Вагнера с единичными весами рёбер. При
    нескольких разрезах одинаковой пропускной способности возвращается первый найденный.
    """
    if graph.N < 2:
        raise InputError('Min-cut needs at least 2 parties')
    nx_graph = graph.to_networkx()
    if not nx.is_connected(nx_graph):
        raise InputError(f'Network graph {graph.edges} is disconnected')
    nx.set_edge_attributes(nx_graph, 1, 'weight')
    capacity, (subset, _) = nx.stoer_wagner(nx_graph)
    cut = Cut(graph, subset)
    if cut.capacity != capacity:
        raise RuntimeError(f'Stoer-Wagner capacity {capacity} mismatches its cut {cut}')
    logging.debug(f'Minimum cut of {graph}: {cut}')
    return cut


def min_cut_bruteforce(graph):
    """Минимальный разрез полным перебором всех `2^(N-1) - 1` разбиений. Рассматриваются только
    подмножества, содержащие участника 0, в лексикографическом порядке; из равных по пропускной
    способности выбирается первое.
    """
    if graph.N > BRUTEFORCE_MAX_PARTIES:
        raise CapacityError(
            f'Brute-force min-cut supports at most {BRUTEFORCE_MAX_PARTIES} parties,'
            f' got {graph.N}'
        )
    best = None
    for subset in iter_bipartitions(graph.N):
        cut = Cut(graph, subset)
        if best is None or cut.capacity < best.capacity:
            best = cut
    return best


def iter_bipartitions(N):
    """Перебирает подмножества участников, содержащие участника 0 (кроме полного множества), в
    лексикографическом порядке. Каждое разбиение на две группы встречается ровно один раз.
    """
    others = range(1, N)
    subsets = [
        (0,) + rest
        for size in range(N - 1)
        for rest in itertools.combinations(others, size)
    ]
    return iter(sorted(subsets))


def parse_edge_list(text):
    """Разбирает граф из текстового формата: одно ребро `i j` на строку, нумерация с нуля.
    Пустые строки и комментарии после `#` пропускаются.
    """
    edges = []
    for num, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise InputError(f'Line {num}: expected "i j", got "{line}"')
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise InputError(f'Line {num}: party indices must be integers, got "{line}"')
    return NetworkGraph.from_edges(edges)


def format_edge_list(graph):
    """Выводит граф в текстовом формате `i j` по ребру на строку."""
    return ''.join(f'{i} {j}\n' for i, j in graph.edges)


def load_graph(designator):
    """Загружает граф по имени (см. `NetworkGraph.by_name`) либо из файла со списком рёбер."""
    try:
        return NetworkGraph.by_name(designator)
    except InputError:
        pass
    try:
        with open(designator, encoding='utf-8') as inp:
            return parse_edge_list(inp.read())
    except OSError as exc:
        raise InputError(f'Cannot read graph "{designator}": {exc}')
