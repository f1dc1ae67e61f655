"""Brauer relations and primitive quotients of quasi-elementary groups ``C_q ⋊ (K ⋊ A)``."""

from .classifier import Verdict, classify
from .construct import QEParams, ValidationError, load_config, parse_config, realize, validate
from .gamma import gamma_route
from .relations import brauer_kernel, prim

__all__ = [
    "QEParams",
    "ValidationError",
    "Verdict",
    "brauer_kernel",
    "classify",
    "gamma_route",
    "load_config",
    "parse_config",
    "prim",
    "realize",
    "validate",
]
__version__ = "0.1.0"
