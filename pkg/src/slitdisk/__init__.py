"""Thin Blaschke product composed with a conformal map of the disk onto the slit disk.

``phi = B o h`` has a single zero in the disk, yet the inner part of
``phi - w`` is an infinite Blaschke product for every other ``w``. The
modules evaluate every ingredient in near-boundary (deviation) arithmetic
and collect numerical evidence for each step of that argument.
"""

from .blaschke import BlaschkeProduct, ZeroSequence, factorial_zeros, hoffman_bound, slit_constant_c
from .config import RunConfig
from .counterexample import Check, Counterexample, VerificationReport, build, phi_eval
from .hyperbolic import BoundaryDeviation, DomainError, pseudo_distance, pseudo_distance_deviation
from .innerfn import SingularInner
from .slitmap import g, g_deviation, h, h_deviation

__all__ = [
    "BlaschkeProduct",
    "BoundaryDeviation",
    "Check",
    "Counterexample",
    "DomainError",
    "RunConfig",
    "SingularInner",
    "VerificationReport",
    "ZeroSequence",
    "build",
    "factorial_zeros",
    "g",
    "g_deviation",
    "h",
    "h_deviation",
    "hoffman_bound",
    "phi_eval",
    "pseudo_distance",
    "pseudo_distance_deviation",
    "slit_constant_c",
]
