"""Exact Kähler differentials, torsion, pull-backs and Čech descent checks."""

from .algebra import FPAlgebra, make_algebra, morphism
from .field import CoeffField
from .kaehler import FPModule, omega_presentation, pullback, torsion_submodule
from .poly import PolyRing, format_poly
from .scenarios import list_scenarios, run_scenario

__version__ = "0.1.0"

__all__ = [
    "CoeffField",
    "FPAlgebra",
    "FPModule",
    "PolyRing",
    "format_poly",
    "list_scenarios",
    "make_algebra",
    "morphism",
    "omega_presentation",
    "pullback",
    "run_scenario",
    "torsion_submodule",
]
