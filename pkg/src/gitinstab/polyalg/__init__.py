from .hilbert import (
    DEFAULT_BUDGET,
    DegreePiece,
    IdealInput,
    degree_piece,
    enumeration_budget,
    plucker_bases,
    plucker_state,
    span_piece,
    trivial_weight_necessary,
    vertex_oracle,
)
from .polynomial import Polynomial, hypersurface_generic_state, monomials, state_of_form
