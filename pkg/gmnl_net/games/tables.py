# -*- coding: utf-8 -*-
"""Чтение и запись игр и поведений в виде CSV-таблиц.

Игра записывается строками `a,b,x,y,win,p` по всем наборам индексов; рациональные значения
записываются дробями (`1/4`), вещественные — с 17 значащими цифрами. Поведение `N` участников
записывается строками `a0..a{N-1},x0..x{N-1},P`. Поведение сетевой игры можно записать по слотам:
столбцы `a{i}.{j}` и `x{i}.{j}` содержат выход и вход участника `i` на ребре с соседом `j`,
порядок столбцов повторяет порядок слотов (по возрастанию номера соседа).
"""

import contextlib
import csv
import itertools

from fractions import Fraction

import numpy as np

from ..utils import InputError, format_float
from .base_classes import Behavior, BellGame

GAME_HEADER = ('a', 'b', 'x', 'y', 'win', 'p')
PROBABILITY_COLUMN = 'P'


@contextlib.contextmanager
def _text_stream(file, mode):
    if isinstance(file, (str, bytes)) or hasattr(file, '__fspath__'):
        try:
            stream = open(file, mode, encoding='utf-8', newline='')
        except OSError as exc:
            raise InputError(f'Cannot open table "{file}": {exc}')
        with stream:
            yield stream
    else:
        yield file


def format_value(value):
    if isinstance(value, Fraction):
        return str(value)
    return format_float(value)


def parse_value(text):
    try:
        return Fraction(text) if '/' in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f'Malformed table value "{text}"')


def _read_rows(file):
    with _text_stream(file, 'r') as stream:
        rows = [row for row in csv.reader(stream) if row and not row[0].startswith('#')]
    if not rows:
        raise InputError('Table is empty')
    return tuple(column.strip() for column in rows[0]), rows[1:]


def _parse_indices(row, count, line):
    try:
        indices = tuple(int(field) for field in row[:count])
    except ValueError:
        raise InputError(f'Row {line}: indices must be integers, got {row[:count]}')
    if any(index < 0 for index in indices):
        raise InputError(f'Row {line}: negative index in {indices}')
    return indices


def _fill_table(entries, shape, what):
    """Собирает полную таблицу из словаря `индексы -> значение`; пропуски не допускаются."""
    expected = int(np.prod(shape))
    if len(entries) != expected:
        raise InputError(f'{what} table lists {len(entries)} of {expected} index combinations')
    table = np.empty(shape, dtype=object)
    for index, value in entries.items():
        table[index] = value
    return table


def write_game(game, file):
    """Записывает двустороннюю игру в CSV."""
    with _text_stream(file, 'w') as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(GAME_HEADER)
        for a, b, x, y in itertools.product(*(range(size) for size in game.alphabets)):
            writer.writerow((a, b, x, y, format_value(game.win[a, b, x, y]),
                             format_value(game.distribution[x, y])))


def read_game(file):
    """Читает двустороннюю игру из CSV. Размеры алфавитов определяются наибольшими индексами;
    вероятность входов `p` должна совпадать во всех строках с одинаковыми `(x, y)`.
    """
    header, rows = _read_rows(file)
    if header != GAME_HEADER:
        raise InputError(
            f'Game table header must be {",".join(GAME_HEADER)}, got {",".join(header)}'
        )
    win, distribution = {}, {}
    for line, row in enumerate(rows, start=2):
        if len(row) != len(GAME_HEADER):
            raise InputError(f'Row {line}: expected {len(GAME_HEADER)} fields, got {len(row)}')
        index = _parse_indices(row, 4, line)
        if index in win:
            raise InputError(f'Row {line}: duplicate indices {index}')
        win[index] = parse_value(row[4])
        p = parse_value(row[5])
        if distribution.setdefault(index[2:], p) != p:
            raise InputError(
                f'Row {line}: input probability {p} of {index[2:]} differs from'
                f' {distribution[index[2:]]} given before'
            )
    if not win:
        raise InputError('Game table has no rows')
    shape = tuple(max(index[axis] for index in win) + 1 for axis in range(4))
    return BellGame(_fill_table(win, shape, 'Game'),
                    _fill_table(distribution, shape[2:], 'Input distribution'))


def behavior_header(N, ng=None):
    """Заголовок таблицы поведения; при заданной сетевой игре столбцы перечисляют слоты."""
    if ng is None:
        columns = [f'a{i}' for i in range(N)] + [f'x{i}' for i in range(N)]
    else:
        columns = [
            f'{kind}{party}.{slot.neighbor}'
            for kind in 'ax'
            for party, slots in enumerate(ng.slots)
            for slot in slots
        ]
    return tuple(columns) + (PROBABILITY_COLUMN,)


def _slot_digits(index, base, slots):
    return [(index // base ** (slots - 1 - slot)) % base for slot in range(slots)]


def write_behavior(behavior, file, ng=None):
    """Записывает поведение в CSV; при заданной сетевой игре составные индексы участников
    раскладываются по слотам.
    """
    if ng is not None and (behavior.outputs != ng.outputs or behavior.inputs != ng.inputs):
        raise InputError(f'{behavior} does not follow the slot structure of {ng}')
    N = behavior.N
    with _text_stream(file, 'w') as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(behavior_header(N, ng))
        for index in itertools.product(*(range(size) for size in behavior.probabilities.shape)):
            if ng is None:
                fields = list(index)
            else:
                out_size, _, in_size, _ = ng.game.alphabets
                fields = [
                    digit
                    for base, offset in ((out_size, 0), (in_size, N))
                    for party in range(N)
                    for digit in _slot_digits(index[offset + party], base, len(ng.slots[party]))
                ]
            writer.writerow(fields + [format_float(behavior.probabilities[index])])


def read_behavior(file, ng=None):
    """Читает поведение из CSV. Без сетевой игры размеры алфавитов определяются наибольшими
    индексами; с сетевой игрой заголовок должен перечислять её слоты в их порядке.
    """
    header, rows = _read_rows(file)
    if not header or header[-1] != PROBABILITY_COLUMN or len(header) % 2 == 0:
        raise InputError(f'Behavior table header must end with "{PROBABILITY_COLUMN}"')
    count = len(header) - 1
    if ng is None:
        N = count // 2
        if header != behavior_header(N):
            raise InputError(f'Behavior table header must be {",".join(behavior_header(N))}')
    else:
        N = ng.N
        expected = behavior_header(N, ng)
        if header != expected:
            raise InputError(
                f'Behavior table columns {",".join(header)} do not follow the slot order'
                f' {",".join(expected)} of {ng}'
            )
    entries = {}
    for line, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise InputError(f'Row {line}: expected {len(header)} fields, got {len(row)}')
        digits = _parse_indices(row, count, line)
        index = digits if ng is None else _compose_slots(ng, digits, line)
        if index in entries:
            raise InputError(f'Row {line}: duplicate indices {digits}')
        entries[index] = float(parse_value(row[-1]))
    if not entries:
        raise InputError('Behavior table has no rows')
    if ng is None:
        shape = tuple(max(index[axis] for index in entries) + 1 for axis in range(2 * N))
    else:
        shape = ng.outputs + ng.inputs
    return Behavior(_fill_table(entries, shape, 'Behavior').astype(float))


def _compose_slots(ng, digits, line):
    """Собирает составные индексы участников из цифр по слотам."""
    out_size, _, in_size, _ = ng.game.alphabets
    digits = iter(digits)
    index = []
    for base in (out_size, in_size):
        for slots in ng.slots:
            value = 0
            for _ in slots:
                digit = next(digits)
                if digit >= base:
                    raise InputError(f'Row {line}: slot value {digit} exceeds alphabet {base}')
                value = value * base + digit
            index.append(value)
    return tuple(index)
