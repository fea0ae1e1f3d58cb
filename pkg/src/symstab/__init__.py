"""Exact linear-stability checks for the symmetric spaces SU(n) and E6/F4."""

from .exactlin import ExactMatrix, GaussianRational, GramSpace
from .rootdata import casimir, root_system, subcritical_weights, weyl_dimension
from .stability import StabilityProblem, Verdict, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix",
    "GaussianRational",
    "GramSpace",
    "StabilityProblem",
    "Verdict",
    "casimir",
    "root_system",
    "run_pipeline",
    "subcritical_weights",
    "weyl_dimension",
]
