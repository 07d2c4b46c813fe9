"""Homomorphisms from sparse random graphs G(n, c/n) to odd cycles.

Constructive homomorphism finding for near-critical densities, exact
small-graph oracles (homomorphism search, circular chromatic number), and the
first-moment bounds that rule homomorphisms out at larger densities.
"""

from .bounds import (BoundPoint, CertifiedBound, GridReport, Region, b_log_gradient, b_value,
                     bipartite_bound, bipartite_threshold, certify_bound, ell_c_bound, grid_search,
                     independent_set_rate, partition_probability_terms)
from .coloring import (BadEdgeSet, CycleColoring, Hom, OddGirthCertificate, find_bad_edges,
                       hom_find, shift_coloring, two_color_forest, verify_coloring)
from .cycles import (OddGirthResult, ProximityViolation, audit_short_cycle_proximity,
                     cycle_degree_profile, girth, odd_girth, short_cycles)
from .decomposition import Decomposition, StructureFailure, decompose, verify_decomposition
from .errors import InvalidInputError, InvalidParameterError, PreconditionError
from .experiments import ExperimentConfig, phi, run_experiment, run_trial, wilson_interval
from .graph import (Graph, TwoCorePrediction, bfs_distances, generate_gnp, is_forest,
                    predict_two_core, two_core)
from .oracle import circulant, circular_chromatic, hom_search, monotonicity_check

__version__ = "0.1.0"
