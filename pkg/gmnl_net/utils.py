# -*- coding: utf-8 -*-
"""Реализация различных вспомогательных классов и функций общего назначения: параметрических
объектов, иерархии исключений, генераторов случайных чисел и вычислительных пулов.
"""

import logging
import multiprocessing
import os

from enum import Enum

import numpy as np

ROOT_SEED = 20240917
THREADS_ENV_VARIABLE = 'GMNL_THREADS'

LEVEL_PROGRESS = (logging.DEBUG + logging.INFO) // 2

logging.addLevelName(LEVEL_PROGRESS, 'PROGRESS')


class InputError(ValueError):
    """Некорректные входные данные: несовпадение длин, размерностей, алфавитов и т.п."""


class ValidationError(InputError):
    """Объект (например, матрица плотности) не удовлетворяет своим инвариантам."""


class CapacityError(RuntimeError):
    """Запрошенный перебор или объём памяти превышает заданный бюджет."""


class UnsupportedError(ValueError):
    """Входные данные корректны, но их обработка не поддерживается (например, несимметричные
    игры или рёбра разной размерности).
    """


class FrozenObject:
    """Класс, представляющий объект с фиксированным набором атрибутов, заданным при создании.
    Пользователь объекта может изменять эти атрибуты, но не может создавать произвольные новые.
    """

    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    def __setattr__(self, name, value):
        getattr(self, name)  # raises exception on unknown attribute
        super().__setattr__(name, value)

    def __repr__(self):
        attrs = ', '.join(f'{name}={value!r}' for name, value in self.__dict__.items())
        return f'{self.__class__.__name__}({attrs})'


class ParametrizedObject(FrozenObject):
    """Базовый класс для объектов с фиксированным набором именованных параметров. Наследники
    задают атрибут `parameters` — словарь со значениями по умолчанию (`None` означает, что
    параметр обязателен). Атрибут `unknown_parameter_policy` определяет реакцию на "лишние"
    параметры.
    """

    class UnknownParameterPolicy(Enum):
        """Политика обработки неизвестных параметров: предупреждать и игнорировать, либо
        выбрасывать исключение.
        """
        WARN = 'warn'
        RAISE = 'raise'

    unknown_parameter_policy = UnknownParameterPolicy.WARN

    def __init__(self, **kwargs):
        """Создаёт объект по известным значениям параметров и проверяет их допустимость."""
        params = self._collect_parameters()
        for name in params:
            if name in kwargs:
                params[name] = kwargs.pop(name)
            if params[name] is None:
                raise InputError(
                    f'Attribute "{name}" is required for {self.__class__.__name__} object'
                )
        if kwargs:
            unexpected_attrs = '", "'.join(kwargs)
            policy = self.unknown_parameter_policy
            if policy is ParametrizedObject.UnknownParameterPolicy.RAISE:
                raise InputError(
                    f'Unknown attributes "{unexpected_attrs}" for {self.__class__.__name__} object'
                )
            elif policy is ParametrizedObject.UnknownParameterPolicy.WARN:
                logging.warning(
                    f'Attributes "{unexpected_attrs}" was ignored'
                    f' for {self.__class__.__name__} object'
                )
            else:
                raise ValueError(f'Unknown parameter policy {policy}')
        super().__init__(**params)
        self.validate()

    def validate(self):
        """Проверяет значения параметров. Наследники расширяют проверку своими ограничениями."""

    def to_dict(self, *, full=False):
        """Возвращает словарь со значениями существенных (отличных от значений по умолчанию)
        параметров, либо всех параметров при `full=True`. Соблюдает инвариант
        `obj.__class__(**obj.to_dict()) == obj`.
        """
        result = {}
        for name, default in self._collect_parameters().items():
            value = getattr(self, name)
            if full or value != default:
                result[name] = value
        return result

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict(full=True) == other.to_dict(full=True)

    def __hash__(self):
        return hash((type(self), tuple(sorted(self.to_dict(full=True).items(), key=str))))

    def __repr__(self):
        essential_params = ', '.join(f'{name}={value!r}' for name, value in self.to_dict().items())
        return f'{self.__class__.__name__}({essential_params})'

    @classmethod
    def _collect_parameters(cls):
        """Собирает из классов-наследников значения атрибута `parameters` и формирует из них общий
        набор параметров со значениями по умолчанию.
        """
        parents = list(cls.__mro__)
        while parents.pop() is not ParametrizedObject:
            pass  # remove base classes
        result = {}
        for parent in reversed(parents):
            result.update(getattr(parent, 'parameters', {}))
        return result


class AscentMonitor:
    """Вспомогательный класс для итеративного поиска максимума: запоминает лучшее значение и
    сообщает об остановке, когда прирост за шаг становится меньше `tolerance` либо исчерпан лимит
    итераций.
    """
    TOLERANCE = 1e-9
    MAX_ITERATIONS = 500

    def __init__(self, tolerance=TOLERANCE, max_iterations=MAX_ITERATIONS):
        self.tolerance = tolerance
        self.max_iterations = max_iterations

        self.best_value = None
        self.iterations = 0
        self._prev_value = None

    def check_converged(self, cur_value, candidate_callback=None):
        """Учитывает очередное значение целевой функции. Опционально вызывает `candidate_callback`
        для каждого нового лучшего значения. Возвращает признак окончания поиска.
        """
        self.iterations += 1
        if self.best_value is None or cur_value > self.best_value:
            if candidate_callback is not None:
                candidate_callback(cur_value)
            self.best_value = cur_value
        converged = (
            self._prev_value is not None
            and abs(cur_value - self._prev_value) < self.tolerance
        )
        self._prev_value = cur_value
        if converged or self.iterations >= self.max_iterations:
            logging.debug(
                f'Ascent stopped after {self.iterations} of {self.max_iterations} iterations'
                f' at {self.best_value:.12g} (converged: {converged})'
            )
            return True
        return False


def make_rng(seed, *spawn_key):
    """Создаёт генератор случайных чисел для подпотока, однозначно определяемого корневым зерном
    и "адресом" `spawn_key` (номер компоненты, номер блока и т.д.). Результат не зависит от того,
    сколько подпотоков уже было создано, поэтому распределение блоков по процессам не влияет на
    результат. Готовый генератор возвращается без изменений: он уже является отдельным потоком.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        seed = ROOT_SEED
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=spawn_key))


def split_into_blocks(total, block_size):
    """Разбивает `total` элементов на блоки фиксированного размера (последний может быть короче)."""
    if total < 0:
        raise InputError(f'Total count must be non-negative, got {total}')
    return [min(block_size, total - start) for start in range(0, total, block_size)]


def get_worker_count(workers=None):
    """Определяет число параллельных процессов: явно заданное значение, ограниченное переменной
    окружения `GMNL_THREADS`, либо число ядер процессора.
    """
    limit = os.environ.get(THREADS_ENV_VARIABLE)
    if limit is not None:
        try:
            limit = int(limit)
        except ValueError:
            raise InputError(f'{THREADS_ENV_VARIABLE} must be an integer, got "{limit}"')
        if limit < 1:
            raise InputError(f'{THREADS_ENV_VARIABLE} must be positive, got {limit}')
    if workers is None:
        workers = limit or os.cpu_count() or 1
    elif limit is not None:
        workers = min(workers, limit)
    return max(1, workers)


def map_blocks(func, args_list, workers=1):
    """Применяет функцию к списку наборов аргументов. При `workers > 1` задачи распределяются по
    пулу процессов; порядок результатов всегда совпадает с порядком аргументов.
    """
    workers = min(get_worker_count(workers), len(args_list) or 1)
    if workers <= 1:
        return [func(*args) for args in args_list]
    logging.log(LEVEL_PROGRESS, f'Distributing {len(args_list)} blocks over {workers} processes')
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.starmap(func, args_list)


def format_float(value):
    """Выводит вещественное число с 17 значащими цифрами (точное восстановление при чтении)."""
    return f'{float(value):.17g}'


def ensure_tuple(params):
    """При необходимости переводит значения в виде строки с пробелами в кортеж строк."""
    if isinstance(params, str):
        params = params.strip().split()
    return tuple(params)
