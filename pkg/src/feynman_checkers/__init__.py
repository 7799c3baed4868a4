"""Feynman checkers: amplitudes of the one-dimensional quantum walk.

Exact (rational ``mu``) and double-precision evolution of the lattice Dirac
equation, the Legendre description of the axis ``x = 0``, the probability of
direction reversal and the model in an external field of edge signs.
"""

__version__ = "0.1.0"

from .errors import CheckersError, DomainError, FieldError, ResourceLimitError
from .exact import QuadraticNumber
from .field import (
    EdgeField,
    FieldKind,
    b_lattice_direct,
    b_lattice_recurrence,
    diamond_check,
    evolve_field_row,
    field_initial_row,
    p_left_field_series,
    q_left_series,
)
from .lattice import (
    Amplitude,
    AmplitudeRow,
    CheckerPath,
    LatticeParams,
    Mode,
    amplitude,
    amplitude_bruteforce,
    amplitude_explicit,
    check_symmetry,
    evolve_row,
    huygens_compose,
    initial_row,
    probability,
)
from .reversal import reversal_limit, reversal_probability_direct, reversal_probability_series
from .special import (
    a1_zero_via_legendre,
    asymptotic_a1_zero,
    legendre,
    legendre_sum_closed,
)
