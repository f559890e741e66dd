"""Exact torus-stability computations for SL_{n+1} and GL_{n+1} representations:
state polytopes of forms and Hilbert points, nearest points, worst
one-parameter subgroups and generic (semi)stability by sampling."""
# gitcore must be imported before polyalg: it pulls polyalg in after its
# torus module is ready.
from . import exactla, convex, gitcore, polyalg
from .convex import PointSet, contains_origin, min_norm_point, origin_in_interior
from .gitcore import (
    FormTarget,
    GroupElement,
    HilbertTarget,
    Mode,
    OneParamSubgroup,
    SamplerConfig,
    State,
    TorusContext,
    Verdict,
    hm_index,
    worst_1ps_for_torus,
    worst_1ps_search,
)
from .polyalg import IdealInput, Polynomial, degree_piece, plucker_state, state_of_form

__version__ = "0.1.0"
