"""Exact S-adic toolkit: directive sequences, languages, invariant-measure
weight tables, measure transfer, vector towers, frequency cones and
recognizability scans."""

from .kernels import BACKEND
from .symbols import (Alphabet, Morphism, apply_morphism, compose, count_occurrences,
                      essential_occurrences, hat_word, incidence_matrix,
                      subdivision_decomposition)
from .directive import DirectiveSequence, beta_minus, growth_report, telescope, truncate
from .language import (complexity, entropy_upper_bound, generate_language, image_language)
from .measures import (WeightTable, characteristic_measure, check_kirchhoff, letter_frequency,
                       transfer_measure, transfer_property_report)
from .towers import (VectorTower, cone_at_level, critical_level_estimate, evaluate_tower,
                     levelwise_measures, prolong_tower, validate_tower)
from .recognizability import (orbit_collision_on_periodic, recognizability_scan,
                              shift_period_check)
from .constructions import (DiagonalFamilySpec, build_diagonal_sequence, build_diagonal_towers,
                            build_example_6_3, build_sigma_ld, build_tau_d)

__version__ = "0.1.0"
