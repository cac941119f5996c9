# -*- coding: utf-8 -*-

import numpy as np
import pytest
import scipy.linalg

from gmnl_net.netgraph import NetworkGraph
from gmnl_net.quantum import (
    EdgeAssignment,
    isotropic, isotropic_network_state, max_entangled, network_fraction, network_twirl,
    phi_gamma_vector, random_state, sigma_star, sigma_star_assignment, sigma_triangle,
    triangle_assignment, twirl_pair, twirl_remainder,
)
from gmnl_net.quantum.overlaps import fidelity_phi_plus
from gmnl_net.utils import InputError, UnsupportedError
from gmnl_net.verification import correlated_two_edge_state


def test_assignment_validation():
    graph = NetworkGraph.path(3)
    with pytest.raises(InputError, match='no subsystems'):
        EdgeAssignment(graph, {(0, 1): (0, 1, 2)})
    with pytest.raises(InputError, match='more than one'):
        EdgeAssignment(graph, {(0, 1): (0, 1, 2), (1, 2): (1, 2, 2)})
    with pytest.raises(InputError, match='numbered'):
        EdgeAssignment(graph, {(0, 1): (0, 1, 2), (1, 2): (2, 5, 2)})
    with pytest.raises(InputError):
        EdgeAssignment(graph, {(0, 2): (0, 1, 2), (1, 2): (2, 3, 2)})


def test_reversed_edge_swaps_subsystems():
    assignment = EdgeAssignment(NetworkGraph.path(2), {(1, 0): (1, 0, 2)})
    assert assignment.mapping == {(0, 1): (0, 1, 2)}
    assert assignment.owner(0) == 0
    assert assignment.owner(1) == 1


def test_star_and_triangle_assignments():
    star = sigma_star_assignment(3, 2)
    assert star.mapping[(0, 2)] == (1, 4, 2)
    assert star.owner(4) == 2
    triangle = triangle_assignment()
    assert triangle.mapping == {(0, 1): (1, 2, 2), (1, 2): (3, 4, 2), (0, 2): (0, 5, 2)}
    assert triangle.dimension == 2


def test_mixed_dimensions():
    graph = NetworkGraph.path(3)
    assignment = EdgeAssignment(graph, {(0, 1): (0, 1, 2), (1, 2): (2, 3, 3)})
    assert assignment.dimension is None
    with pytest.raises(UnsupportedError):
        assignment.uniform_dimension()


def test_check_rejects_mismatched_state():
    _, assignment = isotropic_network_state(NetworkGraph.path(3), 0.9)
    with pytest.raises(InputError):
        assignment.check(isotropic(0.9, 2))


def test_phi_gamma_of_isotropic_product():
    rho, assignment = isotropic_network_state(NetworkGraph.complete(3), [0.9, 0.8, 0.7])
    assert network_fraction(rho, assignment) == pytest.approx(0.9 * 0.8 * 0.7)
    vector = phi_gamma_vector(assignment, rho.dims)
    assert np.linalg.norm(vector) == pytest.approx(1)


def test_phi_gamma_on_embedded_subsystems():
    rho = sigma_star([max_entangled(2), max_entangled(2)])
    assignment = sigma_star_assignment(2, 2)
    # only one edge is entangled in every term of the mixture
    assert network_fraction(rho, assignment) == pytest.approx(0)


def test_twirl_leaves_isotropic_states_unchanged():
    rho = isotropic(0.6, 3)
    assert twirl_pair(rho, 0, 1).distance(rho) < 1e-12


def test_twirl_produces_isotropic_state(seed):
    rho = random_state((2, 2), seed)
    twirled = twirl_pair(rho, 0, 1)
    assert twirled.distance(isotropic(fidelity_phi_plus(rho), 2)) < 1e-12
    with pytest.raises(InputError):
        twirl_pair(rho, 0, 0)


def test_twirl_order_of_subsystems(seed):
    rho = random_state((2, 3, 2), seed)
    twirled = twirl_pair(rho, 2, 0)
    assert twirled.dims == (2, 3, 2)
    np.testing.assert_allclose(twirled.partial_trace([1]).matrix, rho.partial_trace([1]).matrix,
                               atol=1e-12)


def test_network_twirl_keeps_fraction_and_positivity(seed):
    _, assignment = isotropic_network_state(NetworkGraph.path(3), 1.0)
    rho = random_state((2, 2, 2, 2), seed)
    twirled = network_twirl(rho, assignment)
    assert network_fraction(twirled, assignment) == pytest.approx(network_fraction(rho, assignment))
    assert scipy.linalg.eigh(twirled.matrix, eigvals_only=True)[0] > -1e-10


def test_network_twirl_needs_matching_dimensions():
    with pytest.raises(InputError, match='twirling'):
        network_twirl(sigma_triangle(0.8), triangle_assignment())


def test_remainder_of_correlated_state_is_not_positive():
    rho, assignment = correlated_two_edge_state()
    remainder, fraction = twirl_remainder(rho, assignment)
    assert fraction == pytest.approx(0.5)
    assert scipy.linalg.eigh(remainder, eigvals_only=True)[0] < -0.1
    twirled = network_twirl(rho, assignment)
    twirled_remainder, _ = twirl_remainder(twirled, assignment)
    assert scipy.linalg.eigh(twirled_remainder, eigvals_only=True)[0] > -1e-10

