# -*- coding: utf-8 -*-

import numpy as np
import pytest

from gmnl_net.bitcode import BitString, HadamardCode, hamming_weight, xor
from gmnl_net.games import khot_vishnoi
from gmnl_net.games.khot_vishnoi import (
    KVParams, KVStrategy, ScoreEstimate, ScoreMethod,
    classical_bound, distance_counts, exact_score, kv_diagnostic_table, max_weight_strategy,
    mc_score, naive_quantum_score, naive_score, quantum_orbit_strategy_closed_form,
    quantum_orbit_strategy_score, random_strategy, sample_round, score_from_counts, win,
)
from gmnl_net.utils import CapacityError, InputError


def test_parameter_validation():
    with pytest.raises(CapacityError):
        KVParams(k=7, eta=0.25)
    with pytest.raises(InputError):
        KVParams(k=2, eta=0.5)
    with pytest.raises(InputError):
        KVParams(k=2, L=0, eta=0.25)
    params = KVParams(k=3, L=2, eta=0.1)
    assert (params.n, params.bits) == (8, 16)


def test_default_noise():
    assert KVParams.with_default_noise(4).eta == pytest.approx(0.25)
    with pytest.raises(InputError):
        KVParams.with_default_noise(2)


def test_max_weight_responses(code4):
    strategy = max_weight_strategy(code4)
    assert strategy.respond([BitString.from_text('0000')]) == (BitString.from_text('0011'),)
    assert strategy.respond([BitString.from_text('0101')]) == (BitString.from_text('0011'),)
    with pytest.raises(InputError):
        strategy.respond([])


def test_max_weight_chosen_set(code4):
    chosen = sorted(max_weight_strategy(code4).chosen_values())
    assert [str(BitString(int(value), 4)) for value in chosen] == ['0011', '0111', '1011', '1111']


def test_max_weight_score_at_n4(code4, kv4):
    strategy = max_weight_strategy(code4)
    assert exact_score(strategy, strategy, kv4).value == pytest.approx(9 / 16, abs=1e-12)
    assert naive_score(strategy, strategy, kv4).value == pytest.approx(9 / 16, abs=1e-12)


def test_exact_matches_naive_for_random_strategies(code4, seed):
    params = KVParams(k=2, L=2, eta=0.3)
    for num in range(5):
        a = random_strategy(code4, 2, seed + num)
        b = random_strategy(code4, 2, seed + 100 + num)
        assert exact_score(a, b, params).value == pytest.approx(naive_score(a, b, params).value,
                                                                abs=1e-12)


def test_repetition_of_product_strategy_multiplies(code4):
    params = KVParams(k=2, L=2, eta=0.25)
    strategy = max_weight_strategy(code4, 2)
    assert exact_score(strategy, strategy, params).value == pytest.approx((9 / 16) ** 2)


def test_distance_histogram_is_reused_across_noise(code8, seed):
    a = random_strategy(code8, seed=seed)
    b = random_strategy(code8, seed=seed + 1)
    counts = distance_counts(a, b, KVParams(k=3, eta=0.1))
    assert counts.sum() == 32 * 32
    for eta in (0.1, 0.25, 0.4):
        params = KVParams(k=3, eta=eta)
        assert score_from_counts(counts, params).value == pytest.approx(
            exact_score(a, b, params).value, abs=1e-15)
    with pytest.raises(InputError, match='bins'):
        score_from_counts(counts[:-1], KVParams(k=3, eta=0.1))


def test_log_space_sum_agrees(code8, monkeypatch):
    params = KVParams(k=3, eta=0.2)
    strategy = max_weight_strategy(code8)
    linear = exact_score(strategy, strategy, params).value
    monkeypatch.setattr(khot_vishnoi, 'LOG_SPACE_MIN_BITS', 1)
    assert exact_score(strategy, strategy, params).value == pytest.approx(linear, rel=1e-10)


def test_exact_budget(code16):
    params = KVParams(k=4, L=2, eta=0.25)
    strategy = max_weight_strategy(code16, 2)
    with pytest.raises(CapacityError, match='mc_score'):
        exact_score(strategy, strategy, params)


def test_strategy_must_match_parameters(code4, kv4):
    strategy = max_weight_strategy(code4, 2)
    with pytest.raises(InputError):
        exact_score(strategy, strategy, kv4)


@pytest.mark.parametrize('k', [2, 3])
def test_random_strategies_respect_classical_bound(k, seed):
    code = HadamardCode(k)
    params = KVParams(k=k, eta=0.25)
    bound = classical_bound(params)
    for num in range(20):
        a = random_strategy(code, seed=seed + num)
        b = random_strategy(code, seed=seed + 1000 + num)
        assert exact_score(a, b, params).value <= bound


def test_classical_bound_is_multiplicative():
    single = classical_bound(KVParams(k=2, eta=0.25))
    assert single == pytest.approx(4 ** (-1 / 3))
    assert classical_bound(KVParams(k=2, L=3, eta=0.25)) == pytest.approx(single ** 3)


def test_monte_carlo_agrees_with_exact(code4, kv4, seed):
    strategy = max_weight_strategy(code4)
    estimate = mc_score(strategy, strategy, kv4, 20000, seed)
    assert estimate.method is ScoreMethod.MONTE_CARLO
    assert abs(estimate.value - 9 / 16) <= 4 * estimate.std_error


def test_monte_carlo_is_reproducible_across_workers(code4, kv4, seed):
    strategy = max_weight_strategy(code4)
    single = mc_score(strategy, strategy, kv4, 5000, seed, block_size=1000)
    parallel = mc_score(strategy, strategy, kv4, 5000, seed, workers=2, block_size=1000)
    assert single == parallel


def test_single_sample(code4, kv4, seed):
    strategy = max_weight_strategy(code4)
    estimate = mc_score(strategy, strategy, kv4, 1, seed)
    assert estimate.value in (0, 1)
    assert estimate.std_error == 0


def test_monte_carlo_arguments(code4, kv4):
    strategy = max_weight_strategy(code4)
    with pytest.raises(InputError):
        mc_score(strategy, strategy, kv4, 0, 1)
    with pytest.raises(InputError):
        mc_score(strategy, strategy, kv4, 10, np.random.default_rng(1))


def test_sample_round(seed):
    params = KVParams(k=3, L=2, eta=0.25)
    x, y, z = sample_round(params, seed)
    assert (x, y, z) == sample_round(params, seed)
    assert len(x) == len(y) == len(z) == 2
    assert all(xor(a, b) == c for a, b, c in zip(x, y, z))


def test_noise_frequency(seed):
    params = KVParams(k=3, eta=0.25)
    ones = sum(hamming_weight(sample_round(params, seed + num)[2][0]) for num in range(500))
    total = 500 * params.n
    assert abs(ones / total - 0.25) <= 4 * np.sqrt(0.25 * 0.75 / total)


def test_win_condition():
    a = (BitString.from_text('0011'),)
    b = (BitString.from_text('0101'),)
    assert win(a, b, (BitString.from_text('0110'),)) == 1
    assert win(a, b, (BitString.from_text('0000'),)) == 0
    with pytest.raises(InputError):
        win(a, b, ())


def test_quantum_score_at_n4(kv4):
    assert quantum_orbit_strategy_closed_form(kv4) == pytest.approx(7 / 16)
    assert quantum_orbit_strategy_score(kv4).value == pytest.approx(7 / 16, abs=1e-12)
    assert naive_quantum_score(kv4).value == pytest.approx(7 / 16, abs=1e-12)


def test_quantum_exact_matches_closed_form():
    params = KVParams(k=3, eta=0.2)
    assert quantum_orbit_strategy_score(params).value == pytest.approx(
        quantum_orbit_strategy_closed_form(params), abs=1e-12)
    with pytest.raises(CapacityError):
        quantum_orbit_strategy_score(KVParams(k=4, eta=0.2))


def test_quantum_monte_carlo(kv4, seed):
    estimate = quantum_orbit_strategy_score(kv4, 'monte-carlo', samples=2000, seed=seed)
    assert estimate.samples == 2000
    assert abs(estimate.value - 7 / 16) <= 5 * estimate.std_error


def test_strategy_text_round_trip(code4, seed):
    strategy = random_strategy(code4, seed=seed)
    restored = KVStrategy.from_lines(code4, strategy.to_lines())
    for value in range(16):
        word = (BitString(value, 4),)
        assert restored.respond(word) == strategy.respond(word)
    arrow = KVStrategy.from_lines(code4, [line.replace('→', '->') for line in strategy.to_lines()])
    assert arrow.respond((BitString(5, 4),)) == strategy.respond((BitString(5, 4),))


def test_strategy_choice_outside_orbit(code4):
    with pytest.raises(InputError, match='orbit'):
        KVStrategy.from_lines(code4, ['0001 → 1000'])
    with pytest.raises(InputError):
        KVStrategy.from_lines(code4, [''])


def test_partial_strategy_is_rejected(code4, kv4):
    lines = max_weight_strategy(code4).to_lines()
    restored = KVStrategy.from_lines(code4, lines)
    assert exact_score(restored, restored, kv4).value == pytest.approx(9 / 16)
    with pytest.raises(InputError, match='1 of 4 joint orbits'):
        KVStrategy.from_lines(code4, lines[:1])
    with pytest.raises(InputError, match='canonical'):
        KVStrategy.from_lines(code4, ['0100 → 0100'])


def test_partial_slot_is_rejected(code4, seed):
    slot = dict(random_strategy(code4, seed=seed).assignment.slot_assignments[0])
    partial = dict(list(slot.items())[:3])
    with pytest.raises(InputError, match='Slot 2 answers 3 of 4'):
        KVStrategy.from_slots(code4, [slot, partial])
    assert len(KVStrategy.from_slots(code4, [slot, slot]).assignment) == 16


def test_interval_reports_clamping():
    estimate = ScoreEstimate(0.99, 0.01, 100, ScoreMethod.MONTE_CARLO)
    low, high, clamped = estimate.interval()
    assert low == pytest.approx(0.93)
    assert high == 1.0
    assert clamped
    assert not ScoreEstimate(0.5, 0.01, 100, ScoreMethod.MONTE_CARLO).interval()[2]


def test_diagnostic_table():
    rows = kv_diagnostic_table(ks=(2, 3), eta=0.25)
    assert [row.n for row in rows] == [4, 8]
    assert rows[0].quantum == pytest.approx(7 / 16)
    assert rows[0].max_weight == pytest.approx(9 / 16)
    assert rows[0].quantum_ratio < 1
    assert all(row.max_weight <= row.bound for row in rows)
