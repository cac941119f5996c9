# -*- coding: utf-8 -*-
"""Реализация `L`-кратного параллельного повторения игры Кхота–Вишного: генерация входов, условие
выигрыша, классические (постоянные на орбитах) и квантовая стратегии, точный и Монте-Карло расчёт
вероятности выигрыша, а также гиперконтрактивная граница `n^(-L·η/(1-η))` для классических
стратегий.

Игра: Алиса получает `L` слов `x` длины `n`, Боб — `y = x ⊕ z`, где каждый бит `z` независимо
равен 1 с вероятностью `η`. Игроки выдают элементы орбит своих входов под действием кода Адамара
и выигрывают, если `a ⊕ b = z` во всех `L` слотах.
"""

import itertools
import logging
import math

from collections import namedtuple
from collections.abc import Mapping
from enum import Enum

import numpy as np

from scipy.special import logsumexp

from ..bitcode import BitString, HadamardCode, MAX_CODE_ORDER, max_weight_element, orbit_of
from ..utils import (
    LEVEL_PROGRESS, CapacityError, InputError, ParametrizedObject,
    format_float, make_rng, map_blocks, split_into_blocks,
)

EXACT_REPRESENTATIVE_BUDGET = 1 << 12
EXACT_PAIRS_CHUNK = 1 << 20
NAIVE_MAX_BITS = 8
QUANTUM_EXACT_MAX_BITS = 8
LOG_SPACE_MIN_BITS = 33
MC_BLOCK_SIZE = 1 << 14
MC_COMPONENT = 1
QUANTUM_MC_COMPONENT = 2
RANDOM_STRATEGY_COMPONENT = 3


class KVParams(ParametrizedObject):
    """Параметры игры: порядок кода `k` (длина слов `n = 2^k`), число параллельных повторений `L`
    и вероятность шума `η ∈ (0, 1/2)`.
    """
    parameters = {'k': None, 'L': 1, 'eta': None}

    def validate(self):
        if not 1 <= self.k <= MAX_CODE_ORDER:
            raise CapacityError(f'Code order k must be between 1 and {MAX_CODE_ORDER}, got {self.k}')
        if self.L < 1:
            raise InputError(f'Repetition count L must be positive, got {self.L}')
        if not 0 < self.eta < 0.5:
            raise InputError(f'Noise eta must lie strictly inside (0, 1/2), got {self.eta}')

    @property
    def n(self):
        return 1 << self.k

    @property
    def bits(self):
        """Общее число битов входа одного игрока, `n·L`."""
        return self.n * self.L

    @classmethod
    def with_default_noise(cls, k, L=1):
        """Параметры с шумом `η = 1/2 - 1/log2(n)`, при котором граница наиболее выгодна. При
        `n = 4` такой шум вырождается в 0, поэтому требуется `n >= 8`.
        """
        if k < 3:
            raise InputError(f'Default noise 1/2 - 1/log2(n) needs n >= 8, got n = {1 << k}')
        return cls(k=k, L=L, eta=0.5 - 1 / k)


class ScoreMethod(Enum):
    """Способ вычисления вероятности выигрыша."""
    EXACT = 'exact'
    MONTE_CARLO = 'monte-carlo'


class ScoreEstimate(namedtuple('ScoreEstimate', ('value', 'std_error', 'samples', 'method'))):
    """Оценка вероятности выигрыша: значение, стандартная ошибка (0 для точного расчёта), число
    испытаний (0 для точного расчёта) и способ вычисления.
    """
    __slots__ = ()
    CSV_HEADER = ('value', 'std_error', 'samples', 'method')

    def interval(self, sigmas=6):
        """Интервал `value ± sigmas·std_error`. Обрезка до отрезка `[0, 1]` не применяется молча:
        третий элемент результата сообщает, понадобилась ли она.
        """
        low = self.value - sigmas * self.std_error
        high = self.value + sigmas * self.std_error
        clamped = low < 0 or high > 1
        if clamped:
            logging.info(f'Interval [{low:.6g}, {high:.6g}] of {self} clamped to [0, 1]')
        return max(low, 0.0), min(high, 1.0), clamped

    def to_csv_row(self):
        return (format_float(self.value), format_float(self.std_error), str(self.samples),
                self.method.value)


class MaxWeightAssignment(Mapping):
    """Отображение `представитель орбиты -> элемент орбиты с максимальным весом Хэмминга`. Для
    кодов с таблицей орбит (`n <= 16`) вычисляется сразу, для больших — по запросу.
    """

    def __init__(self, code):
        self.code = code
        self._cache = {}
        if code.eager:
            for orbit in code.iter_orbits():
                self._cache[orbit.representative] = max_weight_element(orbit)

    def __getitem__(self, representative):
        choice = self._cache.get(representative)
        if choice is None:
            orbit = orbit_of(representative, self.code)
            if orbit.representative != representative:
                raise KeyError(representative)
            choice = self._cache[representative] = max_weight_element(orbit)
        return choice

    def __iter__(self):
        return self.code.iter_representatives()

    def __len__(self):
        return self.code.orbit_count


class ProductAssignment(Mapping):
    """Совместное отображение на наборах из `L` представителей, составленное из независимых
    отображений по слотам.
    """

    def __init__(self, slot_assignments):
        self.slot_assignments = tuple(slot_assignments)

    def __getitem__(self, representatives):
        if len(representatives) != len(self.slot_assignments):
            raise KeyError(representatives)
        return tuple(
            assignment[representative]
            for assignment, representative in zip(self.slot_assignments, representatives)
        )

    def __iter__(self):
        return itertools.product(*self.slot_assignments)

    def __len__(self):
        return math.prod(len(assignment) for assignment in self.slot_assignments)


class KVStrategy:
    """Детерминированная стратегия игрока в `L`-кратной игре: отображение наборов канонических
    представителей орбит в выбранные элементы этих орбит. Постоянство на орбитах обеспечивается
    тем, что ответ зависит только от представителей.
    """

    def __init__(self, code, L, assignment, *, validate=True):
        self.code = code
        self.L = L
        self.assignment = assignment
        if validate and code.eager:
            if isinstance(assignment, ProductAssignment):
                for slot, slot_assignment in enumerate(assignment.slot_assignments, start=1):
                    self._ensure_slot(slot, slot_assignment)
            elif len(assignment) <= EXACT_REPRESENTATIVE_BUDGET:
                for representatives, choices in assignment.items():
                    self._ensure_choices(representatives, choices)
            expected = code.orbit_count ** L
            if len(assignment) != expected:
                raise InputError(
                    f'Strategy answers {len(assignment)} of {expected} joint orbits;'
                    ' every orbit needs a choice'
                )

    def __repr__(self):
        return f'KVStrategy({self.code}, L={self.L}, {self.assignment.__class__.__name__})'

    @classmethod
    def from_slots(cls, code, slot_assignments, **kwargs):
        """Стратегия, независимо отвечающая в каждом слоте по своему отображению."""
        slot_assignments = tuple(slot_assignments)
        return cls(code, len(slot_assignments), ProductAssignment(slot_assignments), **kwargs)

    def respond(self, words):
        """Ответ на набор из `L` входных слов."""
        words = tuple(words)
        if len(words) != self.L:
            raise InputError(f'Strategy expects {self.L} words, got {len(words)}')
        representatives = tuple(self.code.representative(word) for word in words)
        return tuple(self.assignment[representatives])

    def respond_values(self, values):
        """Векторизованный ответ на массив входов формы `(m, L)` из числовых значений слов."""
        values = np.asarray(values, dtype=np.uint64)
        representatives = self.code.representatives(values)
        unique, inverse = np.unique(representatives, axis=0, return_inverse=True)
        choices = np.array(
            [
                [word.value for word in self.assignment[
                    tuple(BitString(int(value), self.code.n) for value in row)
                ]]
                for row in unique
            ],
            dtype=np.uint64,
        )
        return choices[inverse.reshape(-1)]

    def chosen_values(self, *, budget=EXACT_REPRESENTATIVE_BUDGET):
        """Числовые значения всех выбранных совместных ответов (по одному на совместную орбиту),
        склеенных в слова длины `n·L`.
        """
        count = self.code.orbit_count ** self.L if self.code.eager else None
        if count is None or count > budget:
            raise CapacityError(
                f'{self} has {count or "too many"} joint orbits, exact budget is {budget};'
                ' use mc_score instead'
            )
        if isinstance(self.assignment, ProductAssignment):
            result = np.zeros(1, dtype=np.uint64)
            for assignment in self.assignment.slot_assignments:
                slot = np.array([choice.value for choice in assignment.values()], dtype=np.uint64)
                result = ((result[:, np.newaxis] << np.uint64(self.code.n)) | slot).reshape(-1)
            return result
        n = self.code.n
        return np.array(
            [
                sum(choice.value << (n * (self.L - 1 - num)) for num, choice in enumerate(choices))
                for choices in self.assignment.values()
            ],
            dtype=np.uint64,
        )

    def to_lines(self):
        """Текстовое представление: строки `представители → выбор` (слова через пробел)."""
        return [
            f'{" ".join(map(str, representatives))} → {" ".join(map(str, choices))}'
            for representatives, choices in self.assignment.items()
        ]

    @classmethod
    def from_lines(cls, code, lines):
        """Восстанавливает стратегию из текстового представления `to_lines`."""
        assignment, L = {}, None
        for num, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            separator = '→' if '→' in line else '->'
            try:
                left, right = line.split(separator)
            except ValueError:
                raise InputError(f'Line {num}: expected "representative → choice", got "{line}"')
            representatives = tuple(BitString.from_text(word) for word in left.split())
            choices = tuple(BitString.from_text(word) for word in right.split())
            if L is None:
                L = len(representatives)
            if len(representatives) != L or len(choices) != L:
                raise InputError(f'Line {num}: expected {L} words on each side')
            assignment[representatives] = choices
        if L is None:
            raise InputError('Strategy description is empty')
        return cls(code, L, assignment)

    def _ensure_choices(self, representatives, choices):
        if len(representatives) != self.L or len(choices) != self.L:
            raise InputError(f'Assignment {representatives} -> {choices} has wrong arity')
        for representative, choice in zip(representatives, choices):
            self._ensure_choice(representative, choice)

    def _ensure_choice(self, representative, choice):
        if self.code.representative(representative) != representative:
            raise InputError(f'{representative} is not the canonical representative of its orbit')
        if self.code.representative(choice) != representative:
            raise InputError(f'Choice {choice} is outside the orbit of {representative}')

    def _ensure_slot(self, slot, slot_assignment):
        for representative, choice in slot_assignment.items():
            self._ensure_choice(representative, choice)
        if len(slot_assignment) != self.code.orbit_count:
            raise InputError(
                f'Slot {slot} answers {len(slot_assignment)} of {self.code.orbit_count} orbits;'
                ' every orbit needs a choice'
            )


def max_weight_strategy(code, L=1):
    """Стратегия, в каждом слоте выбирающая элемент орбиты с максимальным весом Хэмминга (при
    равенстве — лексикографически наименьший). Одинакова для обоих игроков.
    """
    assignment = MaxWeightAssignment(code)
    return KVStrategy.from_slots(code, [assignment] * L, validate=False)


def random_strategy(code, L=1, seed=None):
    """Случайная стратегия, постоянная на орбитах: в каждом слоте для каждой орбиты равновероятно
    выбирается один из её элементов.
    """
    rng = make_rng(seed)
    slot_assignments = []
    for _ in range(L):
        slot_assignments.append({
            orbit.representative: orbit.elements[int(rng.integers(len(orbit)))]
            for orbit in code.iter_orbits()
        })
    return KVStrategy.from_slots(code, slot_assignments, validate=False)


def sample_round(params, seed=None):
    """Разыгрывает один раунд: `x` равномерно, биты `z` независимо с вероятностью `η`, `y = x ⊕ z`.
    Возвращает три кортежа из `L` слов.
    """
    x, z = _sample_values(params, make_rng(seed), 1)
    to_words = lambda row: tuple(BitString(int(value), params.n) for value in row)
    return to_words(x[0]), to_words(x[0] ^ z[0]), to_words(z[0])


def win(a, b, z):
    """Условие выигрыша: `a ⊕ b = z` покомпонентно во всех слотах."""
    a, b, z = tuple(a), tuple(b), tuple(z)
    if not len(a) == len(b) == len(z):
        raise InputError(f'Shape mismatch: {len(a)}, {len(b)} and {len(z)} slots')
    return int(all((a_slot ^ b_slot) == z_slot for a_slot, b_slot, z_slot in zip(a, b, z)))


def classical_bound(params):
    """Гиперконтрактивная граница вероятности выигрыша классических стратегий:
    `n^(-L·η/(1-η))`. Мультипликативна по `L`.
    """
    return params.n ** (-params.L * params.eta / (1 - params.eta))


def classical_repetition_bound(k, eta):
    """Функция `c -> classical_bound` для `c`-кратного повторения (для сетевого критерия)."""
    return lambda repetitions: classical_bound(KVParams(k=k, L=repetitions, eta=eta))


def exact_score(strategy_a, strategy_b, params, *, budget=EXACT_REPRESENTATIVE_BUDGET):
    """Точная вероятность выигрыша пары классических стратегий. Используется переписанная форма
    математического ожидания: `P_W = n^L 2^(-nL) Σ_{x∈A} Σ_{y∈B} η^|x⊕y| (1-η)^(nL-|x⊕y|)`, где
    суммирование идёт только по выбранным ответам игроков (по одному на орбиту).
    """
    counts = distance_counts(strategy_a, strategy_b, params, budget=budget)
    logging.log(LEVEL_PROGRESS, f'Distance histogram for {params}: {counts.tolist()}')
    return score_from_counts(counts, params)


def distance_counts(strategy_a, strategy_b, params, *, budget=EXACT_REPRESENTATIVE_BUDGET):
    """Гистограмма расстояний Хэмминга `|x⊕y|` между выбранными ответами двух стратегий. От `η`
    она не зависит: одну гистограмму можно пересчитать для разных уровней шума через
    `score_from_counts`.
    """
    _ensure_compatible(params, strategy_a, strategy_b)
    values_a = strategy_a.chosen_values(budget=budget)
    values_b = strategy_b.chosen_values(budget=budget)
    bits = params.bits
    counts = np.zeros(bits + 1, dtype=np.int64)
    rows = max(1, EXACT_PAIRS_CHUNK // len(values_b))
    for start in range(0, len(values_a), rows):
        distances = np.bitwise_count(values_a[start:start + rows, np.newaxis] ^ values_b)
        counts += np.bincount(distances.reshape(-1), minlength=bits + 1)
    return counts


def score_from_counts(counts, params):
    counts = np.asarray(counts, dtype=np.int64)
    if counts.shape != (params.bits + 1,):
        raise InputError(
            f'Distance histogram has {counts.size} bins, expected {params.bits + 1} for {params}'
        )
    return ScoreEstimate(
        value=_weighted_distance_sum(counts, params),
        std_error=0.0,
        samples=0,
        method=ScoreMethod.EXACT,
    )


def naive_score(strategy_a, strategy_b, params):
    """Вероятность выигрыша прямым перебором всех пар `(x, z)`; служит эталоном для
    `exact_score` при `n·L <= 8`.
    """
    _ensure_compatible(params, strategy_a, strategy_b)
    bits = params.bits
    if bits > NAIVE_MAX_BITS:
        raise CapacityError(f'Naive enumeration needs n·L <= {NAIVE_MAX_BITS}, got {bits}')
    x, z = (values.reshape(-1) for values in np.meshgrid(
        np.arange(1 << bits, dtype=np.uint64), np.arange(1 << bits, dtype=np.uint64),
        indexing='ij',
    ))
    x_slots, z_slots = _split_values(x, params), _split_values(z, params)
    a = strategy_a.respond_values(x_slots)
    b = strategy_b.respond_values(x_slots ^ z_slots)
    wins = np.all((a ^ b) == z_slots, axis=1)
    weights = _noise_probabilities(params)[np.bitwise_count(z)] / (1 << bits)
    return ScoreEstimate(
        value=float(np.sum(weights[wins])),
        std_error=0.0,
        samples=0,
        method=ScoreMethod.EXACT,
    )


def mc_score(strategy_a, strategy_b, params, samples, seed=None, *, workers=1,
             block_size=MC_BLOCK_SIZE):
    """Монте-Карло оценка вероятности выигрыша со стандартной ошибкой `sqrt(p(1-p)/samples)`.
    Испытания разбиваются на блоки фиксированного размера, у каждого блока свой подпоток
    случайных чисел, поэтому результат не зависит от числа процессов.
    """
    _ensure_compatible(params, strategy_a, strategy_b)
    if samples < 1:
        raise InputError(f'Sample count must be positive, got {samples}')
    if isinstance(seed, np.random.Generator):
        raise InputError('Blocked Monte Carlo needs an integer root seed, not a generator')
    blocks = split_into_blocks(samples, block_size)
    wins = map_blocks(
        _mc_block,
        [(strategy_a, strategy_b, params, count, seed, num) for num, count in enumerate(blocks)],
        workers=workers,
    )
    return _make_estimate(sum(wins), samples)


def _mc_block(strategy_a, strategy_b, params, count, seed, block):
    rng = make_rng(seed, MC_COMPONENT, block)
    x, z = _sample_values(params, rng, count)
    a = strategy_a.respond_values(x)
    b = strategy_b.respond_values(x ^ z)
    return int(np.count_nonzero(np.all((a ^ b) == z, axis=1)))


def orbit_basis(orbit):
    """Ортонормированный базис орбиты: элементу `u` соответствует вектор `(-1)^(u_i)/sqrt(n)`.
    Строки матрицы упорядочены как элементы орбиты.
    """
    n = orbit.code.n
    signs = np.array([[1 - 2 * bit for bit in element.bits] for element in orbit.elements])
    return signs / math.sqrt(n)


def outcome_distribution(x_words, y_words, code):
    """Распределение исходов квантовой стратегии на входах `x`, `y`: оба игрока измеряют
    максимально запутанное состояние размерности `n^L` в базисах орбит своих входов. Возвращает
    матрицу вероятностей и списки совместных исходов игроков (кортежи из `L` слов).
    """
    basis_a, outcomes_a, _ = _joint_basis(x_words, code)
    basis_b, outcomes_b, _ = _joint_basis(y_words, code)
    dimension = basis_a.shape[1]
    amplitudes = basis_a.conj() @ basis_b.conj().T / math.sqrt(dimension)
    return np.abs(amplitudes) ** 2, outcomes_a, outcomes_b


def quantum_orbit_strategy_score(params, method=ScoreMethod.EXACT, *, samples=10 ** 4,
                                 seed=None, max_exact_bits=QUANTUM_EXACT_MAX_BITS):
    """Вероятность выигрыша квантовой стратегии в базисах орбит. Точный расчёт перебирает все
    пары `(x, z)` (с учётом того, что сдвиг `x` на кодовое слово не меняет вклад, перебираются
    представители орбит `x` с кратностью `n^L`) и доступен при `n·L <= max_exact_bits`; иначе
    используется Монте-Карло по `(x, z)`.
    """
    method = ScoreMethod(method)
    code = HadamardCode(params.k)
    if method is ScoreMethod.EXACT:
        if params.bits > max_exact_bits:
            raise CapacityError(
                f'Exact quantum score needs n·L <= {max_exact_bits}, got {params.bits};'
                ' use the monte-carlo method'
            )
        noise = _noise_probabilities(params)
        z_values = np.arange(1 << params.bits, dtype=np.uint64)
        z_weights = noise[np.bitwise_count(z_values)]
        z_slots = _split_values(z_values, params)
        multiplicity = params.n ** params.L / (1 << params.bits)
        total = 0.0
        for representatives in itertools.product(code.iter_representatives(), repeat=params.L):
            x_values = np.array([word.value for word in representatives], dtype=np.uint64)
            for z_row, weight in zip(z_slots, z_weights):
                total += weight * _quantum_win_probability(x_values, z_row, code)
        return ScoreEstimate(
            value=multiplicity * total, std_error=0.0, samples=0, method=ScoreMethod.EXACT,
        )

    if samples < 1:
        raise InputError(f'Sample count must be positive, got {samples}')
    rng = make_rng(seed, QUANTUM_MC_COMPONENT)
    x, z = _sample_values(params, rng, samples)
    values = [_quantum_win_probability(x_row, z_row, code) for x_row, z_row in zip(x, z)]
    estimate = _make_estimate_from_values(values)
    logging.debug(f'Quantum orbit strategy score for {params}: {estimate}')
    return estimate


def naive_quantum_score(params):
    """Вероятность выигрыша квантовой стратегии прямым перебором всех `(x, z)` по
    распределениям `outcome_distribution`, без использования симметрии; эталон при `n·L <= 8`.
    """
    bits = params.bits
    if bits > NAIVE_MAX_BITS:
        raise CapacityError(f'Naive enumeration needs n·L <= {NAIVE_MAX_BITS}, got {bits}')
    code = HadamardCode(params.k)
    noise = _noise_probabilities(params)
    total = 0.0
    for x_value, z_value in itertools.product(range(1 << bits), repeat=2):
        x_words = _split_words(x_value, params)
        z_words = _split_words(z_value, params)
        y_words = tuple(x ^ z for x, z in zip(x_words, z_words))
        probabilities, outcomes_a, outcomes_b = outcome_distribution(x_words, y_words, code)
        won = sum(
            probabilities[row, column]
            for row, a in enumerate(outcomes_a)
            for column, b in enumerate(outcomes_b)
            if win(a, b, z_words)
        )
        total += noise[z_value.bit_count()] * won
    return ScoreEstimate(
        value=total / (1 << bits), std_error=0.0, samples=0, method=ScoreMethod.EXACT,
    )


def quantum_orbit_strategy_closed_form(params):
    """Вероятность выигрыша квантовой стратегии в базисах орбит в замкнутом виде:
    `((1 - 2η)^2 + 4η(1 - η)/n)^L` — следствие правила Борна для максимально запутанного
    состояния.
    """
    eta, n = params.eta, params.n
    return ((1 - 2 * eta) ** 2 + 4 * eta * (1 - eta) / n) ** params.L


KVDiagnosticRow = namedtuple(
    'KVDiagnosticRow',
    ('n', 'L', 'eta', 'quantum', 'quantum_std_error', 'quantum_method',
     'max_weight', 'bound', 'quantum_ratio', 'max_weight_ratio'),
)


def kv_diagnostic_table(ks=(2, 3, 4), eta=0.25, L=1, *, samples=10 ** 4, seed=None):
    """Таблица отношений `квантовая вероятность / граница` и `max-weight / граница` для ряда
    длин слов. Нарушение границы не утверждается: при малых `n` квантовая стратегия проигрывает.
    """
    rows = []
    for k in ks:
        params = KVParams(k=k, L=L, eta=eta)
        if params.bits <= QUANTUM_EXACT_MAX_BITS:
            quantum = quantum_orbit_strategy_score(params, ScoreMethod.EXACT)
        else:
            quantum = quantum_orbit_strategy_score(
                params, ScoreMethod.MONTE_CARLO, samples=samples, seed=seed,
            )
        strategy = max_weight_strategy(HadamardCode(k), L)
        try:
            classical = exact_score(strategy, strategy, params).value
        except CapacityError:
            classical = mc_score(strategy, strategy, params, samples, seed).value
        bound = classical_bound(params)
        rows.append(KVDiagnosticRow(
            n=params.n, L=L, eta=eta,
            quantum=quantum.value, quantum_std_error=quantum.std_error,
            quantum_method=quantum.method.value,
            max_weight=classical, bound=bound,
            quantum_ratio=quantum.value / bound, max_weight_ratio=classical / bound,
        ))
    return rows


def _quantum_win_probability(x_values, z_values, code):
    """Вероятность выигрыша квантовой стратегии при фиксированных `x` и `z`."""
    n = code.n
    x_words = [BitString(int(value), n) for value in x_values]
    y_words = [BitString(int(x) ^ int(z), n) for x, z in zip(x_values, z_values)]
    basis_a, _, values_a = _joint_basis(x_words, code)
    basis_b, _, values_b = _joint_basis(y_words, code)
    probabilities = (basis_a @ basis_b.T) ** 2 / basis_a.shape[1]
    target = 0
    for value in z_values:
        target = (target << n) | int(value)
    mask = (values_a[:, np.newaxis] ^ values_b[np.newaxis, :]) == np.uint64(target)
    return float(np.sum(probabilities[mask]))


def _joint_basis(words, code):
    """Тензорное произведение базисов орбит слотов, соответствующие совместные исходы и их
    числовые значения (слоты склеены, первый слот — старшие биты).
    """
    basis, outcomes = np.ones((1, 1)), [()]
    values = np.zeros(1, dtype=np.uint64)
    for word in words:
        orbit = orbit_of(word, code)
        basis = np.kron(basis, orbit_basis(orbit))
        outcomes = [outcome + (element,) for outcome in outcomes for element in orbit.elements]
        slot = np.array([element.value for element in orbit.elements], dtype=np.uint64)
        values = ((values[:, np.newaxis] << np.uint64(code.n)) | slot).reshape(-1)
    return basis, outcomes, values


def _sample_values(params, rng, count):
    """Генерирует массивы `x` и `z` формы `(count, L)` из числовых значений слов."""
    n = params.n
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    x_bits = rng.integers(0, 2, size=(count, params.L, n), dtype=np.uint64)
    z_bits = (rng.random((count, params.L, n)) < params.eta).astype(np.uint64)
    pack = lambda bits: np.bitwise_or.reduce(bits << shifts, axis=-1)
    return pack(x_bits), pack(z_bits)


def _split_values(values, params):
    """Разбивает значения слов длины `n·L` на `L` слов длины `n` (первый слот — старшие биты)."""
    mask = np.uint64((1 << params.n) - 1)
    shifts = [np.uint64(params.n * (params.L - 1 - num)) for num in range(params.L)]
    return np.stack([(values >> shift) & mask for shift in shifts], axis=-1)


def _split_words(value, params):
    n = params.n
    return tuple(
        BitString((value >> (n * (params.L - 1 - num))) & ((1 << n) - 1), n)
        for num in range(params.L)
    )


def _noise_probabilities(params):
    """Вероятности `η^d (1-η)^(nL-d)` конкретного слова шума веса `d = 0..nL`."""
    d = np.arange(params.bits + 1)
    return params.eta ** d * (1 - params.eta) ** (params.bits - d)


def _weighted_distance_sum(counts, params):
    """`n^L 2^(-nL) Σ_d counts[d] η^d (1-η)^(nL-d)`; при `nL > 32` — в логарифмической шкале."""
    bits = params.bits
    if bits < LOG_SPACE_MIN_BITS:
        scale = params.n ** params.L / float(1 << bits)
        return float(scale * np.sum(counts * _noise_probabilities(params)))
    d = np.flatnonzero(counts)
    log_terms = (
        np.log(counts[d].astype(float))
        + d * math.log(params.eta) + (bits - d) * math.log(1 - params.eta)
        + params.L * math.log(params.n) - bits * math.log(2)
    )
    return float(np.exp(logsumexp(log_terms)))


def _make_estimate(wins, samples):
    value = wins / samples
    return ScoreEstimate(
        value=value,
        std_error=math.sqrt(value * (1 - value) / samples),
        samples=samples,
        method=ScoreMethod.MONTE_CARLO,
    )


def _make_estimate_from_values(values):
    values = np.asarray(values, dtype=float)
    samples = len(values)
    std_error = float(np.std(values, ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return ScoreEstimate(
        value=float(np.mean(values)),
        std_error=std_error,
        samples=samples,
        method=ScoreMethod.MONTE_CARLO,
    )


def _ensure_compatible(params, *strategies):
    for strategy in strategies:
        if strategy.code.n != params.n or strategy.L != params.L:
            raise InputError(
                f'{strategy} does not match game parameters n={params.n}, L={params.L}'
            )
