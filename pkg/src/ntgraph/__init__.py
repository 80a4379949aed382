"""n-total graphs of finite commutative rings.

Builds the graph whose vertices are the elements of a ring R and whose edges
join x and y whenever x**n + y**n falls into a union D of incomparable prime
ideals, computes exact structural invariants, and mechanically verifies the
closed-form structure theorems against brute force.
"""

from .rings import (DescriptorError, ExtensionField, ExtensionFieldSpec,
                    FieldParams, PrimeField, ProductRing, RingBackend,
                    RingError, find_irreducible, has_nth_root_of_minus_one,
                    is_prime, make_extension_field, make_field,
                    make_prime_field, make_product, nth_power_subgroup,
                    nth_root_count, parse_ring, pow_n, prime_powers_up_to)
from .ideals import (CylinderIdeal, IdealError, IdealUnion, RawIdeal,
                     ZeroIdeal, are_coprime, is_ideal, parse_ideal_union,
                     union_membership, validate_union)
from .graph import (INF, NTotalGraph, PathResult, build_graph,
                    build_graph_reference, component_diameters, components,
                    diameter, export_dot, girth, graph_to_json_dict,
                    induced_subgraph, shortest_path)
from .structure import (ComponentClass, StructureReport, classify_component,
                        complete, complete_bipartite, decompose, isolated,
                        is_totally_disconnected)
from .oracle import (SweepSpec, SweptConfig, VerificationLedger, figure_errata,
                     minimal_generator_count, predict_connectivity_corollary,
                     predict_diam_girth_ranges, predict_field_char2,
                     predict_field_odd_char, verify_all)
from .witness import (F2Poly, ONE_PLUS_ALL, f2_membership_principal,
                      verify_corollary_rminusd,
                      verify_diameter_m_construction,
                      verify_zxy_nonconnectivity, z_window_graph)

__version__ = "0.1.0"
