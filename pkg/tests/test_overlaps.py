# -*- coding: utf-8 -*-

import numpy as np
import pytest

from scipy.stats import unitary_group

from gmnl_net.netgraph import NetworkGraph
from gmnl_net.quantum import (
    basis_state, entanglement_fraction, entanglement_fraction_parametrized, fidelity_phi_plus,
    isotropic, isotropic_network_state, network_fraction, optimize_network_fraction,
    phi_gamma_vector, phi_plus_vector, pure_state, random_state,
)
from gmnl_net.utils import InputError


@pytest.mark.parametrize('F', [0.3, 0.5, 0.8, 1.0])
def test_isotropic_fraction_is_recovered(F):
    assert entanglement_fraction(isotropic(F, 2)) == pytest.approx(F, abs=1e-10)


def test_low_fidelity_isotropic_fraction():
    # the other Bell states overlap isotropic(0, 2) by 1/3
    assert fidelity_phi_plus(isotropic(0, 2)) == pytest.approx(0, abs=1e-12)
    assert entanglement_fraction(isotropic(0, 2)) == pytest.approx(1 / 3, abs=1e-10)


def test_product_state_fraction():
    assert entanglement_fraction(basis_state((0, 0), (2, 2))) == pytest.approx(0.5)
    assert fidelity_phi_plus(basis_state((0, 1), (2, 2))) == pytest.approx(0)


@pytest.mark.parametrize('d', [2, 3])
def test_rotated_maximally_entangled_state(d, seed):
    unitary = unitary_group.rvs(d, random_state=np.random.default_rng(seed))
    rho = pure_state(np.kron(unitary, np.eye(d)) @ phi_plus_vector(d), (d, d))
    assert fidelity_phi_plus(rho) < 1
    assert entanglement_fraction(rho, seed=seed) == pytest.approx(1, abs=1e-8)


def test_qutrit_ascent_on_isotropic_state(seed):
    assert entanglement_fraction(isotropic(0.6, 3), seed=seed) == pytest.approx(0.6, abs=1e-8)


def test_closed_form_matches_parametrized(seed):
    rng = np.random.default_rng(seed)
    for num in range(5):
        rho = random_state((2, 2), rng)
        closed = entanglement_fraction(rho)
        assert entanglement_fraction(rho, method='ascent', seed=num) <= closed + 1e-10
        assert entanglement_fraction_parametrized(rho, seed=num) == pytest.approx(closed, abs=1e-6)


def test_fraction_of_a_pair_inside_a_larger_state():
    rho, _ = isotropic_network_state(NetworkGraph.path(3), [0.9, 0.4])
    assert entanglement_fraction(rho, 2, 3) == pytest.approx(0.4)
    assert entanglement_fraction(rho, 0, 1) == pytest.approx(0.9)


def test_method_validation():
    with pytest.raises(InputError):
        entanglement_fraction(isotropic(0.5, 3), method='closed-form')
    with pytest.raises(InputError):
        entanglement_fraction(isotropic(0.5, 2), method='newton')
    with pytest.raises(InputError):
        entanglement_fraction(isotropic(0.5, 2), 0, 0)


def test_triangle_network_fraction():
    rho, assignment = isotropic_network_state(NetworkGraph.complete(3), 0.7)
    assert network_fraction(rho, assignment) == pytest.approx(0.343)


def test_optimization_undoes_local_rotations(seed):
    _, assignment = isotropic_network_state(NetworkGraph.path(3), 1.0)
    dims = (2, 2, 2, 2)
    rng = np.random.default_rng(seed)
    first, last = (unitary_group.rvs(2, random_state=rng) for _ in range(2))
    rotation = np.kron(np.kron(first, np.eye(4)), last)
    rho = pure_state(rotation @ phi_gamma_vector(assignment, dims), dims)
    assert network_fraction(rho, assignment) < 1
    optimum = optimize_network_fraction(rho, assignment, restarts=4, seed=seed)
    assert optimum.value == pytest.approx(1, abs=1e-8)
    assert set(optimum.unitaries) == set(assignment.edges)


def test_optimized_fraction_is_a_lower_bound_above_canonical(seed):
    _, assignment = isotropic_network_state(NetworkGraph.path(3), 1.0)
    rho = random_state((2, 2, 2, 2), seed)
    canonical = network_fraction(rho, assignment)
    optimized = network_fraction(rho, assignment, optimize=True, restarts=3, seed=seed)
    assert optimized >= canonical - 1e-12
    assert optimized <= 1
