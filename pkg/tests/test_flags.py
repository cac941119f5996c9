# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest

from gmnl_net.quantum import (
    copies_for_success, coupon_collector_prob, coverage_fraction, coverage_frequency,
    entangled_link_probability, extract_link_state, isotropic, product_of_links, sigma_star,
    simulate_flag_protocol,
)
from gmnl_net.utils import InputError


def test_coverage_fraction():
    assert coverage_fraction(2, 2) == Fraction(1, 2)
    assert coverage_fraction(3, 3) == Fraction(2, 9)
    assert coverage_fraction(3, 2) == 0
    assert coverage_fraction(1, 1) == 1
    assert coupon_collector_prob(2, 3) == pytest.approx(0.75)


def test_coverage_is_monotone():
    values = [coverage_fraction(4, k) for k in range(4, 30)]
    assert values == sorted(values)


def test_copies_for_success():
    assert copies_for_success(2, 0.5) == 2
    assert copies_for_success(2, 0.9) == 5
    assert copies_for_success(1, 0.99) == 1
    with pytest.raises(InputError):
        copies_for_success(2, 1)


def test_simulation(seed):
    links = simulate_flag_protocol(3, 10, seed)
    assert links <= {0, 1, 2}
    assert links == simulate_flag_protocol(3, 10, seed)
    assert simulate_flag_protocol(3, 0, seed) == frozenset()
    with pytest.raises(InputError):
        simulate_flag_protocol(0, 1)


def test_coverage_frequency_agrees_with_exact_value(seed):
    estimate = coverage_frequency(3, 5, 20000, seed)
    assert abs(estimate.frequency - coupon_collector_prob(3, 5)) <= 4 * estimate.std_error
    with pytest.raises(InputError):
        coverage_frequency(3, 5, 0)


def test_flagged_star_links():
    edges = [isotropic(0.9, 2), isotropic(0.7, 2)]
    rho = sigma_star(edges)
    for num, edge in enumerate(edges):
        assert entangled_link_probability(rho, num, 2 + num) == pytest.approx(0.5)
        assert extract_link_state(rho, num, 2 + num).distance(edge) < 1e-12
    with pytest.raises(InputError):
        entangled_link_probability(edges[0], 0, 1)


def test_product_of_links():
    links = [isotropic(0.9, 2), isotropic(0.7, 2)]
    rho = product_of_links(links)
    assert rho.dims == (2, 2, 2, 2)
    assert rho.partial_trace([1, 3]).distance(links[1]) < 1e-12
    with pytest.raises(InputError):
        product_of_links([])
