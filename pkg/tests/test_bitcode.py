# -*- coding: utf-8 -*-

import itertools

import numpy as np
import pytest

from gmnl_net.bitcode import (
    BitString, HadamardCode,
    cartesian_orbit, concatenate, hadamard_code, hamming_weight, max_weight_element, orbit_of,
    split, xor,
)
from gmnl_net.utils import CapacityError, InputError


def test_text_format_is_msb_first():
    word = BitString.from_text('0011')
    assert word.value == 3
    assert word.bits == (0, 0, 1, 1)
    assert str(word) == '0011'
    assert BitString.from_bits([1, 0, 1]) == BitString.from_text('101')


@pytest.mark.parametrize('text', ['', '01a1', '2'])
def test_malformed_text(text):
    with pytest.raises(InputError):
        BitString.from_text(text)


def test_xor_and_weight():
    a, b = BitString.from_text('0101'), BitString.from_text('0011')
    assert xor(a, b) == BitString.from_text('0110')
    assert a ^ b == xor(b, a)
    assert hamming_weight(a) == 2
    assert xor(a, a) == BitString.zeros(4)


def test_length_mismatch():
    with pytest.raises(InputError):
        xor(BitString.from_text('01'), BitString.from_text('011'))
    with pytest.raises(InputError):
        BitString.from_text('01') < BitString.from_text('011')


def test_concatenate_and_split():
    words = (BitString.from_text('10'), BitString.from_text('01'))
    joined = concatenate(words)
    assert str(joined) == '1001'
    assert split(joined, 2) == words
    with pytest.raises(InputError):
        split(joined, 3)


def test_n4_codewords():
    code = hadamard_code(2)
    assert [str(h) for h in code.codewords] == ['0000', '0101', '0011', '0110']


@pytest.mark.parametrize('k', [2, 3, 4])
def test_code_properties(k):
    code = HadamardCode(k)
    n = code.n
    assert len(code) == n
    assert all(h.weight == n // 2 for h in code.codewords[1:])
    for a, b in itertools.product(code.codewords, repeat=2):
        assert xor(a, b) in code


@pytest.mark.parametrize('k', [2, 3, 4])
def test_orbits_partition_the_cube(k):
    code = HadamardCode(k)
    seen = set()
    orbits = list(code.iter_orbits())
    assert len(orbits) == code.orbit_count == (1 << code.n) // code.n
    for orbit in orbits:
        assert len(orbit) == code.n
        assert orbit.representative == min(orbit.elements)
        seen.update(word.value for word in orbit)
    assert len(seen) == 1 << code.n


def test_representative_is_orbit_invariant(code8):
    rng = np.random.default_rng(3)
    for value in rng.integers(256, size=20):
        word = BitString(int(value), 8)
        representative = code8.representative(word)
        for h in code8.codewords:
            assert code8.representative(word ^ h) == representative


def test_vectorized_representatives_match(code8):
    values = np.arange(256, dtype=np.uint64)
    expected = [code8.representative(BitString(int(v), 8)).value for v in values]
    np.testing.assert_array_equal(code8.representatives(values), expected)


def test_lazy_code_matches_definition():
    code = HadamardCode(5)
    assert not code.eager
    word = BitString((1 << 31) | 12345, 32)
    assert code.representative(word).value == min(word.value ^ h.value for h in code.codewords)
    with pytest.raises(CapacityError):
        next(code.iter_representatives())


def test_code_order_limits():
    with pytest.raises(CapacityError):
        HadamardCode(7)
    with pytest.raises(CapacityError):
        HadamardCode(0)


def test_max_weight_tie_rule(code4):
    assert str(max_weight_element(orbit_of(BitString.zeros(4), code4))) == '0011'
    assert str(max_weight_element(orbit_of(BitString.from_text('1000'), code4))) == '1011'


def test_cartesian_orbit(code4):
    words = [BitString.from_text('0001'), BitString.from_text('1001')]
    orbits = cartesian_orbit(words, code4)
    assert [str(orbit.representative) for orbit in orbits] == ['0001', '1001']
    assert all(word in orbit for word, orbit in zip(words, orbits))
