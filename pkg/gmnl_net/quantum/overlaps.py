# -*- coding: utf-8 -*-
"""Реализация перекрытий состояний с максимально запутанными: точности относительно `Φ+`,
доли запутанности (максимума перекрытия по всем максимально запутанным состояниям) и сетевой
доли `F^Γ` с оптимизацией по локальным унитарным операторам.
"""

import logging
import math

from collections import namedtuple

import numpy as np
import scipy.linalg
import scipy.optimize

from scipy.stats import unitary_group

from ..utils import LEVEL_PROGRESS, AscentMonitor, InputError, make_rng
from .channels import phi_gamma_vector
from .states import phi_plus_vector

ASCENT_RESTARTS = 16
PARAMETRIZED_STARTS = 8
OVERLAP_COMPONENT = 4
NETWORK_COMPONENT = 5
PARAMETRIZED_COMPONENT = 6

MAGIC_BASIS = np.array([
    [1, 0, 0, 1],
    [1j, 0, 0, -1j],
    [0, 1j, 1j, 0],
    [0, 1, -1, 0],
]).T / math.sqrt(2)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

FractionOptimum = namedtuple('FractionOptimum', ('value', 'unitaries'))


def pair_state(rho, sys_a, sys_b):
    """Редуцированное состояние пары подсистем одинаковой размерности."""
    if rho.dims[sys_a] != rho.dims[sys_b]:
        raise InputError(
            f'Pair subsystems have dimensions {rho.dims[sys_a]} and {rho.dims[sys_b]}'
        )
    if sys_a == sys_b:
        raise InputError(f'Pair needs two distinct subsystems, got {sys_a} twice')
    return rho.partial_trace([sys_a, sys_b])


def fidelity_phi_plus(rho, sys_a=0, sys_b=1):
    """Точность `Tr(Φ+ ρ_AB)` относительно канонического максимально запутанного состояния."""
    pair = pair_state(rho, sys_a, sys_b)
    phi = phi_plus_vector(pair.dims[0])
    return float(np.real(phi.conj() @ pair.matrix @ phi))


def entanglement_fraction(rho, sys_a=0, sys_b=1, *, method='auto', restarts=ASCENT_RESTARTS,
                          seed=None):
    """Доля запутанности пары: максимум `⟨Φ|ρ_AB|Φ⟩` по максимально запутанным `Φ`. Для кубитов
    (`method='auto'`) используется замкнутая форма — наибольшее собственное значение
    вещественной части `ρ_AB` в магическом базисе. Иначе — монотонный подъём по унитарным
    операторам `U` (`Φ = (U ⊗ 1)Φ+`) с несколькими случайными стартами; результат в этом случае
    является нижней оценкой.
    """
    pair = pair_state(rho, sys_a, sys_b)
    d = pair.dims[0]
    if method == 'auto':
        method = 'closed-form' if d == 2 else 'ascent'
    if method == 'closed-form':
        if d != 2:
            raise InputError(f'Closed form of the entanglement fraction needs qubits, got d={d}')
        in_magic_basis = MAGIC_BASIS.conj().T @ pair.matrix @ MAGIC_BASIS
        return float(scipy.linalg.eigh(np.real(in_magic_basis), eigvals_only=True)[-1])
    if method == 'ascent':
        return _pair_ascent(pair.matrix, d, restarts, make_rng(seed, OVERLAP_COMPONENT)).value
    if method == 'parametrized':
        return entanglement_fraction_parametrized(pair, seed=seed)
    raise InputError(f'Unknown entanglement fraction method "{method}"')


def entanglement_fraction_parametrized(pair, *, starts=PARAMETRIZED_STARTS, seed=None):
    """Доля запутанности двух кубитов прямой оптимизацией по трём параметрам локального
    унитарного оператора `U = exp(i Σ θ_k σ_k)`; служит независимой проверкой замкнутой формы.
    """
    if pair.dims != (2, 2):
        raise InputError(f'Parametrized optimization needs a two-qubit state, got {pair.dims}')
    rng = make_rng(seed, PARAMETRIZED_COMPONENT)
    phi = phi_plus_vector(2)

    def negative_overlap(theta):
        generator = sum(value * pauli for value, pauli in zip(theta, PAULI))
        vector = np.kron(scipy.linalg.expm(1j * generator), np.eye(2)) @ phi
        return -float(np.real(vector.conj() @ pair.matrix @ vector))

    best = None
    for start in range(starts):
        initial = np.zeros(3) if start == 0 else rng.uniform(-math.pi, math.pi, size=3)
        result = scipy.optimize.minimize(negative_overlap, initial, method='BFGS',
                                         options={'gtol': 1e-10})
        if best is None or -result.fun > best:
            best = -result.fun
    return best


def network_fraction(rho, assignment, optimize=False, **kwargs):
    """Сетевая доля `F^Γ = ⟨Φ^Γ|ρ|Φ^Γ⟩`. При `optimize=True` вектор `Φ^Γ` подбирается покоординатным
    подъёмом по локальным унитарным операторам рёбер; результат — нижняя оценка оптимума.
    """
    assignment.check(rho)
    if not optimize:
        vector = phi_gamma_vector(assignment, rho.dims)
        return float(np.real(vector.conj() @ rho.matrix @ vector))
    return optimize_network_fraction(rho, assignment, **kwargs).value


def optimize_network_fraction(rho, assignment, *, restarts=ASCENT_RESTARTS, seed=None,
                              tolerance=AscentMonitor.TOLERANCE,
                              max_iterations=AscentMonitor.MAX_ITERATIONS):
    """Покоординатный подъём `F^Γ` по унитарным операторам `U_e` на подсистемах участников `i`
    рёбер `(i, j)`. Первый старт — тождественные операторы, остальные — случайные по мере Хаара.
    Возвращает лучшее значение и соответствующие операторы.
    """
    assignment.check(rho)
    rng = make_rng(seed, NETWORK_COMPONENT)
    best = None
    for restart in range(restarts):
        if restart == 0:
            unitaries = {edge: np.eye(d) for edge, (_, _, d) in assignment.mapping.items()}
        else:
            unitaries = {
                edge: _haar_unitary(d, rng) for edge, (_, _, d) in assignment.mapping.items()
            }
        monitor = AscentMonitor(tolerance, max_iterations)
        while True:
            for edge in assignment.edges:
                gradient = _edge_gradient(rho, assignment, unitaries, edge)
                unitaries[edge] = scipy.linalg.polar(gradient)[0]
            vector = phi_gamma_vector(assignment, rho.dims, unitaries)
            value = float(np.real(vector.conj() @ rho.matrix @ vector))
            if monitor.check_converged(value):
                break
        logging.log(LEVEL_PROGRESS, f'Restart {restart}: network fraction {monitor.best_value:.12g}')
        if best is None or monitor.best_value > best.value:
            best = FractionOptimum(value=monitor.best_value, unitaries=dict(unitaries))
    logging.debug(f'Optimized network fraction of {rho}: {best.value:.12g} (lower bound)')
    return best


def _haar_unitary(d, rng):
    return unitary_group.rvs(d, random_state=rng)


def _pair_ascent(matrix, d, restarts, rng, tolerance=AscentMonitor.TOLERANCE,
                 max_iterations=AscentMonitor.MAX_ITERATIONS):
    """Подъём `⟨Φ_U|ρ|Φ_U⟩` для `Φ_U = vec(U)/sqrt(d)`: шаг заменяет `U` унитарным множителем
    полярного разложения градиента `mat(ρ vec(U))`. Целевая функция выпукла, поэтому шаг не
    уменьшает её значение.
    """
    best = None
    for restart in range(restarts):
        unitary = np.eye(d, dtype=complex) if restart == 0 else _haar_unitary(d, rng)
        monitor = AscentMonitor(tolerance, max_iterations)
        while True:
            vector = unitary.reshape(-1) / math.sqrt(d)
            image = matrix @ vector
            value = float(np.real(vector.conj() @ image))
            if monitor.check_converged(value):
                break
            unitary = scipy.linalg.polar(image.reshape(d, d))[0]
        if best is None or monitor.best_value > best.value:
            best = FractionOptimum(value=monitor.best_value, unitaries=unitary)
    return best


def _edge_gradient(rho, assignment, unitaries, edge):
    """Градиент `F^Γ` по сопряжённому унитарному оператору ребра при фиксированных остальных:
    свёртка `ρ Φ^Γ` с сопряжёнными множителями `Φ^Γ` остальных рёбер (блок `d x d`).
    """
    dims = rho.dims
    vector = phi_gamma_vector(assignment, dims, unitaries)
    tensor = (rho.matrix @ vector).reshape(dims)
    axes = list(range(len(dims)))
    for other in assignment.edges:
        if other == edge:
            continue
        sys_a, sys_b, d = assignment.mapping[other]
        pair = np.zeros((dims[sys_a], dims[sys_b]), dtype=complex)
        pair[:d, :d] = unitaries[other] / math.sqrt(d)
        tensor = np.tensordot(tensor, pair.conj(), axes=([axes.index(sys_a), axes.index(sys_b)],
                                                         [0, 1]))
        axes = [axis for axis in axes if axis not in (sys_a, sys_b)]
    sys_a, sys_b, d = assignment.mapping[edge]
    if axes.index(sys_a) > axes.index(sys_b):
        tensor = tensor.T
    return tensor[:d, :d] / math.sqrt(d)
