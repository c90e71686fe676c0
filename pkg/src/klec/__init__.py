"""Exact L-functions, Tate-Shafarevich orders and Kloosterman-angle
statistics for the family of elliptic curves

    y^2 = x^3 + (t^(q^a) - t) x^2 + gamma x   over  F_q(t),

computed two independent ways (closed-form character-sum product vs
brute-force point counting) and cross-checked at every step.
"""

import sys as _sys

# L-polynomial coefficients at the larger levels run to thousands of decimal
# digits; exact decimal serialization is a core feature, so lift CPython's
# int-to-str conversion cap for this process
if hasattr(_sys, "set_int_max_str_digits"):
    _sys.set_int_max_str_digits(0)

from .algebra import (
    FieldElem,
    FieldSpec,
    Place,
    PlaceSet,
    Poly,
    build_field,
    enumerate_irreducibles,
    is_squarefree,
    places_P,
    quadratic_character,
    relative_trace,
)
from .cyclotomic import CycInt, CycRat, ord_one_minus_zeta, zeta
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
