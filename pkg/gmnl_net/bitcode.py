# -*- coding: utf-8 -*-
"""Реализация алгебры двоичных слов, кода Адамара и разбиения булева куба на орбиты действия кода.
Слова хранятся как целые числа вместе с явно заданной длиной; в текстовом виде старший бит идёт
первым, то есть символ с индексом `i` соответствует биту `h_i` слова.
"""

import logging

from functools import total_ordering

import numpy as np

from .utils import CapacityError, InputError

MAX_CODE_ORDER = 6  # n <= 64
EAGER_ORBITS_MAX_LENGTH = 16


@total_ordering
class BitString:
    """Неизменяемое двоичное слово фиксированной длины. Лексикографический порядок слов одной
    длины совпадает с порядком их числовых значений.
    """
    __slots__ = ('length', 'value')

    def __init__(self, value, length):
        if length < 1:
            raise InputError(f'Bit string length must be positive, got {length}')
        if not 0 <= value < (1 << length):
            raise InputError(f'Value {value} does not fit into {length} bits')
        object.__setattr__(self, 'length', int(length))
        object.__setattr__(self, 'value', int(value))

    def __setattr__(self, name, value):
        raise AttributeError(f'{self.__class__.__name__} is immutable')

    @classmethod
    def from_text(cls, text):
        """Разбирает слово из текстового вида `0101...` (старший бит первым)."""
        text = text.strip()
        if not text or set(text) - {'0', '1'}:
            raise InputError(f'Malformed bit string "{text}"')
        return cls(int(text, 2), len(text))

    @classmethod
    def from_bits(cls, bits):
        """Собирает слово из последовательности битов `h_0, h_1, ...`."""
        bits = list(bits)
        return cls.from_text(''.join(str(int(bit)) for bit in bits))

    @classmethod
    def zeros(cls, length):
        return cls(0, length)

    @property
    def bits(self):
        """Возвращает кортеж битов `h_0, ..., h_{n-1}`."""
        return tuple((self.value >> (self.length - 1 - i)) & 1 for i in range(self.length))

    @property
    def weight(self):
        return self.value.bit_count()

    def __str__(self):
        return format(self.value, f'0{self.length}b')

    def __repr__(self):
        return f'BitString({self})'

    def __len__(self):
        return self.length

    def __eq__(self, other):
        if not isinstance(other, BitString):
            return NotImplemented
        return self.length == other.length and self.value == other.value

    def __lt__(self, other):
        if not isinstance(other, BitString):
            return NotImplemented
        _ensure_same_length(self, other)
        return self.value < other.value

    def __hash__(self):
        return hash((self.length, self.value))

    def __xor__(self, other):
        return xor(self, other)


def xor(a, b):
    """Побитовая сумма по модулю 2 двух слов одинаковой длины."""
    _ensure_same_length(a, b)
    return BitString(a.value ^ b.value, a.length)


def hamming_weight(word):
    """Число единичных битов слова."""
    return word.weight


def concatenate(words):
    """Склеивает слова в одно (первое слово занимает старшие биты)."""
    value, length = 0, 0
    for word in words:
        value = (value << word.length) | word.value
        length += word.length
    return BitString(value, length)


def split(word, parts):
    """Разбивает слово на `parts` слов равной длины (обратная операция к `concatenate`)."""
    if word.length % parts:
        raise InputError(f'Cannot split {word.length} bits into {parts} equal parts')
    length = word.length // parts
    mask = (1 << length) - 1
    return tuple(
        BitString((word.value >> (length * (parts - 1 - num))) & mask, length)
        for num in range(parts)
    )


class HadamardCode:
    """Код Адамара порядка `n = 2^k`: слово с номером `a ∈ {0,1}^k` имеет биты `h_j = a·j`
    (скалярное произведение по модулю 2) для всех `j ∈ {0,1}^k`. Для `n <= 16` при создании сразу
    вычисляется таблица представителей орбит всего булева куба, для больших `n` представители
    вычисляются по запросу.
    """

    def __init__(self, k):
        if not 1 <= k <= MAX_CODE_ORDER:
            raise CapacityError(
                f'Hadamard code order must be between 1 and {MAX_CODE_ORDER}, got {k}'
            )
        self.k = k
        self.n = 1 << k
        self.codewords = tuple(
            BitString.from_bits((a & j).bit_count() % 2 for j in range(self.n))
            for a in range(self.n)
        )
        self._codeword_values = np.array([h.value for h in self.codewords], dtype=np.uint64)
        self._representatives = None
        if self.n <= EAGER_ORBITS_MAX_LENGTH:
            words = np.arange(1 << self.n, dtype=np.uint64)
            self._representatives = np.min(
                words[:, np.newaxis] ^ self._codeword_values[np.newaxis, :],
                axis=1,
            )
            logging.debug(f'Tabulated orbit representatives of {self}')

    def __repr__(self):
        return f'HadamardCode(k={self.k}, n={self.n})'

    def __len__(self):
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    def __contains__(self, word):
        return isinstance(word, BitString) and word.length == self.n and word in self.codewords

    @property
    def eager(self):
        return self._representatives is not None

    @property
    def orbit_count(self):
        return (1 << self.n) // self.n

    def representative(self, word):
        """Канонический (лексикографически наименьший) представитель орбиты слова."""
        self._ensure_word(word)
        if self._representatives is not None:
            return BitString(int(self._representatives[word.value]), self.n)
        return BitString(min(word.value ^ h.value for h in self.codewords), self.n)

    def representatives(self, values):
        """Векторизованный вариант `representative` для массива числовых значений слов."""
        values = np.asarray(values, dtype=np.uint64)
        if self._representatives is not None:
            return self._representatives[values.astype(np.intp)]
        return np.min(values[..., np.newaxis] ^ self._codeword_values, axis=-1)

    def iter_representatives(self):
        """Перебирает представителей всех орбит в возрастающем порядке. Доступно только для кодов
        с предварительно вычисленной таблицей орбит.
        """
        if self._representatives is None:
            raise CapacityError(
                f'Orbit enumeration of {self} needs 2^{self.n} words;'
                f' only n <= {EAGER_ORBITS_MAX_LENGTH} is supported'
            )
        for value in np.unique(self._representatives):
            yield BitString(int(value), self.n)

    def iter_orbits(self):
        """Перебирает все орбиты булева куба."""
        for representative in self.iter_representatives():
            yield Orbit(self, representative)

    def _ensure_word(self, word):
        if word.length != self.n:
            raise InputError(f'Word {word} has length {word.length}, code expects {self.n}')


class Orbit:
    """Орбита слова под действием кода Адамара: `{x + h : h ∈ H_n}`. Элементы хранятся в
    возрастающем порядке, первый из них является каноническим представителем.
    """
    __slots__ = ('code', 'representative', 'elements')

    def __init__(self, code, word):
        code._ensure_word(word)
        self.code = code
        self.elements = tuple(sorted(xor(word, h) for h in code.codewords))
        self.representative = self.elements[0]

    def __repr__(self):
        return f'Orbit({self.representative}, n={self.code.n})'

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, word):
        return word in self.elements

    def __eq__(self, other):
        if not isinstance(other, Orbit):
            return NotImplemented
        return self.code.n == other.code.n and self.representative == other.representative

    def __hash__(self):
        return hash((self.code.n, self.representative))


def hadamard_code(k):
    """Строит код Адамара длины `n = 2^k`, `1 <= k <= 6`."""
    return HadamardCode(k)


def orbit_of(word, code):
    """Орбита слова под действием кода."""
    return Orbit(code, word)


def max_weight_element(orbit):
    """Элемент орбиты с максимальным весом Хэмминга; среди равных по весу выбирается
    лексикографически наименьший.
    """
    return min(orbit.elements, key=lambda word: (-word.weight, word.value))


def cartesian_orbit(words, code):
    """Покомпонентные орбиты набора из `L` слов. Совместная орбита является их прямым
    произведением и содержит `n^L` элементов.
    """
    return [orbit_of(word, code) for word in words]


def _ensure_same_length(a, b):
    if a.length != b.length:
        raise InputError(f'Bit strings length mismatch: {a} vs. {b}')
