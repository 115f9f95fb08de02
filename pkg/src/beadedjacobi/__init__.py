"""Exact computation with beaded Jacobi diagrams."""

from .errors import (AlexanderNormalizationError, BeadedError, BudgetError, ContextMismatchError,
                     InternalCheckError, ParseError, ValidationError)
from .laurent import (TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly, conjugate, conjugate_bead,
                      log_derivative, validate_alexander)
from .diagram import (BeadedDiagram, Edge, Leg, NumberedGraph, Vertex, automorphism_count,
                      canonical_key, canonical_vertex_orientation, dumbbell, orientation_sign,
                      tadpole_on, theta, tripod)
from .dsl import format_diagram, parse_diagram
from .normalform import (DiagramSum, evaluation_p, expand_multilinear, hair_map, holonomy_normal_form,
                         inclusion_i, orientation_normalize, reduce, tadpole_split, tadpole_stick_eval)

__version__ = "0.1.0"
