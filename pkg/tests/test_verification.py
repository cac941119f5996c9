# -*- coding: utf-8 -*-

import pytest

from gmnl_net.verification import (
    AGREEMENT_TOLERANCE, CHECKS, check_certificates, check_hadamard_code,
    check_hypercontractive_bound, check_local_bounds, check_triangle_biseparable, run_checks,
)


def test_checks_are_numbered():
    assert [number for number, _, _ in CHECKS] == list(range(1, 13))


def test_fast_checks(seed):
    assert check_hadamard_code(seed)[0]
    passed, detail = check_local_bounds(seed)
    assert passed
    assert '5/8' in detail


def test_triangle_biseparable_check(seed):
    passed, detail = check_triangle_biseparable(seed)
    assert passed
    assert 'best enumerated biproduct score 0.625' in detail


def test_bound_check_reuses_histograms(seed):
    passed, detail = check_hypercontractive_bound(seed, ks=(2, 3), strategies=5)
    assert passed
    assert detail.startswith('max(score - bound) = ')


def test_certificate_check_reports_tolerance(seed):
    passed, detail = check_certificates(seed)
    assert passed
    assert f'agree within {AGREEMENT_TOLERANCE:g}: True' in detail


def test_failing_check_is_reported(monkeypatch, seed):
    def broken(seed):
        raise RuntimeError('boom')

    monkeypatch.setattr('gmnl_net.verification.CHECKS', ((99, 'broken', broken),))
    (result,) = run_checks(seed)
    assert not result.passed
    assert 'boom' in result.detail


@pytest.mark.slow
def test_full_suite(seed):
    results = run_checks(seed)
    failed = [(result.number, result.title, result.detail) for result in results if not result.passed]
    assert not failed
