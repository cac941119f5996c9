# -*- coding: utf-8 -*-

__version__ = '1.0'

from .bitcode import (
    BitString, HadamardCode, Orbit,
    xor, hamming_weight, concatenate, split,
    hadamard_code, orbit_of, max_weight_element, cartesian_orbit,
)
from .certify import (
    Certificate, DiagnosticReport, REFERENCE_CONSTANTS,
    certify_network_state, certify_star, copy_number_diagnostic, normalized_violation,
)
from .netgraph import (
    NetworkGraph, Cut,
    cut_capacity, min_cut, min_cut_bruteforce, iter_bipartitions,
    parse_edge_list, format_edge_list, load_graph,
)
from .utils import (
    InputError, ValidationError, CapacityError, UnsupportedError,
    ParametrizedObject, make_rng,
)
