"""Desk-scale enumeration and verification toolkit for the polyiamond
growth constant: exact counts, marked-configuration inequalities, the
majorizing recurrences, and the numeric bound they certify.
"""

from .bounds import (CubicSolution, GrowthEstimate, bound_report,
                     cubic_solution, growth_estimate, lambda_upper,
                     lower_bound_fekete, solve_cubic_closed_form,
                     solve_cubic_newton)
from .enumeration import (HEX, TRIANGLE, CountTable, GeometryError,
                          MarkedClassSpec, Polyiamond, SizeLimitError,
                          count_fixed, count_fixed_oracle, count_marked,
                          default_geometry, enumerate_marked, load_geometry,
                          verify_observation, verify_proposition1,
                          verify_supermultiplicative)
from .lattice import (DOWN, UP, EDGE_FLIP, IDENTITY, LatticeSymmetry,
                      apply_symmetry, compose, inverse, neighbors,
                      triangle_neighbors, triangle_to_vertex, vertex_class,
                      vertex_to_triangle)
from .recurrence import (BoundSequences, HybridSequence, dominance_check,
                         hat_sequences, u_sequence, verify_series_identities,
                         write_hat_csv, write_u_csv)

__version__ = "0.1.0"
