# -*- coding: utf-8 -*-
"""Реализация плотных матриц плотности составных систем и конструкторов состояний: максимально
запутанного, изотропного, смесей с флагами `σ*` (звезда) и `σ^Δ` (треугольник), а также двоичного
формата хранения состояний.
"""

import logging
import math
import struct

import numpy as np
import scipy.linalg

from ..utils import CapacityError, InputError, ValidationError, make_rng

MAX_DIMENSION = 4096
HERMITICITY_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-9


class DensityOperator:
    """Неизменяемая матрица плотности системы из нескольких подсистем с размерностями `dims`.
    При создании проверяется эрмитовость, единичный след и неотрицательность спектра (с допуском);
    нарушения приводят к `ValidationError`, а не к молчаливой коррекции.
    """
    __slots__ = ('matrix', 'dims')

    def __init__(self, matrix, dims, *, validate=True):
        dims = tuple(int(dim) for dim in dims)
        if not dims or any(dim < 1 for dim in dims):
            raise InputError(f'Subsystem dimensions must be positive, got {dims}')
        total = math.prod(dims)
        if total > MAX_DIMENSION:
            raise CapacityError(
                f'Total dimension {total} of subsystems {dims} exceeds the dense limit'
                f' {MAX_DIMENSION}'
            )
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (total, total):
            raise InputError(f'Matrix of shape {matrix.shape} mismatches dimensions {dims}')
        if validate:
            _validate_matrix(matrix)
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'dims', dims)

    def __setattr__(self, name, value):
        raise AttributeError(f'{self.__class__.__name__} is immutable')

    def __repr__(self):
        return f'DensityOperator(dims={self.dims})'

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def subsystems(self):
        return len(self.dims)

    def partial_trace(self, keep):
        """Редуцированное состояние подсистем `keep` (в указанном порядке)."""
        keep = [self._ensure_subsystem(sys) for sys in keep]
        if len(set(keep)) != len(keep):
            raise InputError(f'Repeated subsystems in {keep}')
        count = self.subsystems
        tensor = self.matrix.reshape(self.dims + self.dims)
        remaining = list(range(count))
        for sys in sorted(set(range(count)) - set(keep), reverse=True):
            axis = remaining.index(sys)
            tensor = np.trace(tensor, axis1=axis, axis2=axis + len(remaining))
            remaining.pop(axis)
        dims = tuple(self.dims[sys] for sys in remaining)
        result = DensityOperator(tensor.reshape(math.prod(dims), -1), dims, validate=False)
        return result.permute([remaining.index(sys) for sys in keep])

    def permute(self, order):
        """Переставляет подсистемы: подсистема `i` результата — подсистема `order[i]` исходного
        состояния.
        """
        order = [self._ensure_subsystem(sys) for sys in order]
        if sorted(order) != list(range(self.subsystems)):
            raise InputError(f'Order {order} is not a permutation of {self.subsystems} subsystems')
        if order == sorted(order):
            return self
        count = self.subsystems
        tensor = self.matrix.reshape(self.dims + self.dims)
        tensor = tensor.transpose(order + [count + sys for sys in order])
        return DensityOperator(
            tensor.reshape(self.dimension, self.dimension),
            [self.dims[sys] for sys in order],
            validate=False,
        )

    def tensor(self, other):
        """Тензорное произведение состояний; подсистемы `other` идут после подсистем `self`."""
        return DensityOperator(
            np.kron(self.matrix, other.matrix), self.dims + other.dims, validate=False,
        )

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def expectation(self, operator):
        """Среднее значение `Tr(ρ O)` эрмитова оператора."""
        operator = np.asarray(operator)
        if operator.shape != self.matrix.shape:
            raise InputError(f'Operator of shape {operator.shape} mismatches {self}')
        return float(np.real(np.trace(self.matrix @ operator)))

    def distance(self, other):
        """Максимальное отклонение элементов матриц (для сравнения состояний в проверках)."""
        if self.dims != other.dims:
            raise InputError(f'Cannot compare {self} with {other}')
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def _ensure_subsystem(self, sys):
        sys = int(sys)
        if not 0 <= sys < self.subsystems:
            raise InputError(f'Subsystem {sys} is out of range for {self}')
        return sys


def _validate_matrix(matrix):
    deviation = np.max(np.abs(matrix - matrix.conj().T))
    if deviation > HERMITICITY_TOLERANCE:
        raise ValidationError(f'Matrix is not Hermitian: deviation {deviation:.3g}')
    trace = np.trace(matrix)
    if abs(trace - 1) > TRACE_TOLERANCE:
        raise ValidationError(f'Matrix trace {trace:.12g} differs from 1')
    min_eigenvalue = scipy.linalg.eigh(matrix, eigvals_only=True)[0]
    if min_eigenvalue < -PSD_TOLERANCE:
        raise ValidationError(f'Matrix is not positive semidefinite: eigenvalue {min_eigenvalue:.3g}')


def phi_plus_vector(d, D=None):
    """Вектор `Σ_i |ii⟩/sqrt(d)` в пространстве двух подсистем размерности `D >= d` (уровни
    `0..d-1` каждой подсистемы).
    """
    D = d if D is None else D
    if d < 2:
        raise InputError(f'Maximally entangled state needs d >= 2, got {d}')
    if D < d:
        raise InputError(f'Embedding dimension {D} is less than {d}')
    vector = np.zeros(D * D, dtype=complex)
    vector[[i * D + i for i in range(d)]] = 1 / math.sqrt(d)
    return vector


def pure_state(vector, dims):
    """Матрица плотности чистого состояния (вектор нормируется)."""
    vector = np.asarray(vector, dtype=complex)
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise InputError('Zero vector has no pure state')
    vector = vector / norm
    return DensityOperator(np.outer(vector, vector.conj()), dims)


def basis_state(levels, dims):
    """Произведение базисных состояний `|l_1 l_2 ...⟩`."""
    if len(levels) != len(dims):
        raise InputError(f'Got {len(levels)} levels for {len(dims)} subsystems')
    index = 0
    for level, dim in zip(levels, dims):
        if not 0 <= level < dim:
            raise InputError(f'Level {level} is out of range for dimension {dim}')
        index = index * dim + level
    vector = np.zeros(math.prod(dims), dtype=complex)
    vector[index] = 1
    return pure_state(vector, dims)


def max_entangled(d):
    """Проектор на максимально запутанное состояние `Φ+` двух подсистем размерности `d`."""
    return pure_state(phi_plus_vector(d), (d, d))


def isotropic(F, d):
    """Изотропное состояние `F Φ+ + (1 - F)(1 - Φ+)/(d^2 - 1)`."""
    if not 0 <= F <= 1:
        raise InputError(f'Fidelity F must lie in [0, 1], got {F}')
    phi = max_entangled(d).matrix
    complement = (np.eye(d * d) - phi) / (d * d - 1)
    return DensityOperator(F * phi + (1 - F) * complement, (d, d))


def maximally_mixed(dims):
    total = math.prod(dims)
    return DensityOperator(np.eye(total) / total, dims)


def random_state(dims, seed=None, *, rank=None):
    """Случайное состояние из ансамбля Жинибра заданного ранга (по умолчанию — полного)."""
    rng = make_rng(seed)
    total = math.prod(dims)
    rank = total if rank is None else rank
    ginibre = rng.normal(size=(total, rank)) + 1j * rng.normal(size=(total, rank))
    matrix = ginibre @ ginibre.conj().T
    return DensityOperator(matrix / np.trace(matrix), dims)


def embed_pair(rho, D):
    """Вкладывает состояние двух подсистем размерности `d` в подсистемы размерности `D >= d`
    (уровни `0..d-1`).
    """
    d = rho.dims[0]
    if rho.dims != (d, d):
        raise InputError(f'Pair state must have equal local dimensions, got {rho.dims}')
    if D < d:
        raise InputError(f'Embedding dimension {D} is less than {d}')
    if D == d:
        return rho
    tensor = np.zeros((D, D, D, D), dtype=complex)
    tensor[:d, :d, :d, :d] = rho.matrix.reshape(d, d, d, d)
    return DensityOperator(tensor.reshape(D * D, D * D), (D, D), validate=False)


def place_pairs(pair_states, pairs, count):
    """Размещает состояния пар подсистем `pair_states` на позициях `pairs` (пары индексов) в
    системе из `count` подсистем; остальные подсистемы должны отсутствовать.
    """
    current = [sys for pair in pairs for sys in pair]
    if sorted(current) != list(range(count)):
        raise InputError(f'Pairs {pairs} do not cover {count} subsystems exactly once')
    result = pair_states[0]
    for state in pair_states[1:]:
        result = result.tensor(state)
    return result.permute([current.index(sys) for sys in range(count)])


def sigma_star(edge_states):
    """Смесь `σ*` для звезды из `M` рёбер: с вероятностью `1/M` запутано ровно `i`-е ребро, все
    остальные пары находятся во флаговом состоянии `|dd⟩`. Подсистемы упорядочены как
    `A_1..A_M, B_1..B_M`, каждая имеет размерность `d + 1`. При `M = 1` флаг не нужен и
    возвращается само состояние ребра.
    """
    edge_states = list(edge_states)
    M = len(edge_states)
    if M < 1:
        raise InputError('Star mixture needs at least one edge state')
    d = edge_states[0].dims[0]
    for state in edge_states:
        if state.dims != (d, d):
            raise InputError(f'Edge states must all be on {d}x{d}, got {state.dims}')
    if M == 1:
        return edge_states[0]
    D = d + 1
    if D ** (2 * M) > MAX_DIMENSION:
        raise CapacityError(f'Star mixture of {M} edges has dimension {D ** (2 * M)}')
    flag = basis_state((d, d), (D, D))
    pairs = [(i, M + i) for i in range(M)]
    matrix = np.zeros((D ** (2 * M),) * 2, dtype=complex)
    for i, state in enumerate(edge_states):
        term = [embed_pair(state, D) if j == i else flag for j in range(M)]
        matrix += place_pairs(term, pairs, 2 * M).matrix / M
    logging.debug(f'Built star mixture of {M} edges of dimension {d}')
    return DensityOperator(matrix, (D,) * (2 * M))


TRIANGLE_PAIRS = ((1, 2), (3, 4), (5, 0))


def sigma_triangle(F):
    """Смесь `σ^Δ(F)` на шести кутритах `A1, A2, B1, B2, C1, C2`: равновероятно одна из пар
    `(A2, B1)`, `(B2, C1)`, `(C2, A1)` находится в изотропном двухкубитном состоянии с точностью
    `F`, остальные подсистемы — во флаговом состоянии `|2⟩`.
    """
    pair = embed_pair(isotropic(F, 2), 3)
    flag = basis_state((2, 2), (3, 3))
    matrix = np.zeros((3 ** 6,) * 2, dtype=complex)
    for entangled in range(len(TRIANGLE_PAIRS)):
        term = [pair if num == entangled else flag for num in range(len(TRIANGLE_PAIRS))]
        matrix += place_pairs(term, TRIANGLE_PAIRS, 6).matrix / len(TRIANGLE_PAIRS)
    return DensityOperator(matrix, (3,) * 6)


def save_state(rho, file):
    """Записывает состояние в двоичный формат: число подсистем и их размерности (uint32, little
    endian), затем элементы матрицы построчно как пары float64 (вещественная и мнимая части).
    """
    header = struct.pack(f'<{1 + rho.subsystems}I', rho.subsystems, *rho.dims)
    payload = np.ascontiguousarray(rho.matrix, dtype='<c16').tobytes()
    if isinstance(file, (str, bytes)) or hasattr(file, '__fspath__'):
        with open(file, 'wb') as out:
            out.write(header + payload)
    else:
        file.write(header + payload)


def load_state(file):
    """Читает состояние, записанное `save_state`, и проверяет его допустимость."""
    if isinstance(file, (str, bytes)) or hasattr(file, '__fspath__'):
        try:
            with open(file, 'rb') as inp:
                data = inp.read()
        except OSError as exc:
            raise InputError(f'Cannot read state "{file}": {exc}')
    else:
        data = file.read()
    if len(data) < 4:
        raise InputError('State file is truncated: no header')
    (count,) = struct.unpack_from('<I', data)
    offset = 4 * (1 + count)
    if count < 1 or len(data) < offset:
        raise InputError(f'State file header is malformed: {count} subsystems')
    dims = struct.unpack_from(f'<{count}I', data, 4)
    total = math.prod(dims)
    if total > MAX_DIMENSION:
        raise CapacityError(f'Stored state of dimension {total} exceeds {MAX_DIMENSION}')
    expected = offset + 16 * total * total
    if len(data) != expected:
        raise InputError(f'State file has {len(data)} bytes, expected {expected}')
    matrix = np.frombuffer(data, dtype='<c16', offset=offset).reshape(total, total)
    return DensityOperator(matrix, dims)
