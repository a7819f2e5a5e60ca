"""Characteristic polynomials of q-deformed graphical arrangements over finite fields."""

__version__ = "0.1.0"

from .arrangement import (
    Arrangement,
    Hyperplane,
    build_affine,
    build_central,
    characteristic_polynomial,
    flat_lattice,
    graph_characteristic_polynomial,
    point_count,
)
from .derivations import Derivation, basis_theta, certify_chordal, is_logarithmic, saito_check
from .field import Field, FieldElem, field_create, field_from_order
from .graph import Graph, chromatic_polynomial, graph_from_edges, parse_graph, read_graph
from .intpoly import IntPolynomial
from .mpoly import MPoly
from .qcomb import expand_q_falling, q_binomial, q_falling, q_int, q_stirling
from .theorems import closed_form, probe_polynomiality, verify_congruence, verify_stable_partition_theorem
