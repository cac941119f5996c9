# -*- coding: utf-8 -*-

from .channels import (
    EdgeAssignment, sigma_star_assignment, triangle_assignment, isotropic_network_state,
    phi_gamma_vector, twirl_pair, network_twirl, twirl_remainder,
)
from .flags import (
    CoverageEstimate, coverage_fraction, coupon_collector_prob, copies_for_success,
    simulate_flag_protocol, coverage_frequency,
    entangled_link_probability, extract_link_state, product_of_links,
)
from .overlaps import (
    FractionOptimum, fidelity_phi_plus, entanglement_fraction,
    entanglement_fraction_parametrized, network_fraction, optimize_network_fraction,
)
from .states import (
    DensityOperator, max_entangled, isotropic, maximally_mixed, pure_state, basis_state,
    random_state, phi_plus_vector, embed_pair, place_pairs, sigma_star, sigma_triangle,
    save_state, load_state,
)
