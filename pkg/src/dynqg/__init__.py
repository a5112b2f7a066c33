"""Dynamical quantum groups at roots of unity as weak Hopf algebras, with exact verification."""

from .abrr import (
    DynamicalElement,
    curly_J,
    invert_dynamical,
    sl2_oracle,
    solve_abrr,
    verify_dynamical_twist,
    verify_shifted_twist,
)
from .construction import DualD, TwistedAlgebra, build_HJ, duality_checks, end_A_wha, rank_and_iso, twisted_R
from .errors import DynqgError, InvalidSpec
from .reports import Report
from .scalars import LambdaParam, make_field
from .uqg import build_uq, cartan_datum
from .verify import verify_axioms
from .wha import WeakHopf

__all__ = [
    "DualD",
    "DynamicalElement",
    "DynqgError",
    "InvalidSpec",
    "LambdaParam",
    "Report",
    "TwistedAlgebra",
    "WeakHopf",
    "build_HJ",
    "build_uq",
    "cartan_datum",
    "curly_J",
    "duality_checks",
    "end_A_wha",
    "invert_dynamical",
    "make_field",
    "rank_and_iso",
    "sl2_oracle",
    "solve_abrr",
    "twisted_R",
    "verify_axioms",
    "verify_dynamical_twist",
    "verify_shifted_twist",
]
