"""Contextual probability with hyperbolic interference."""

__version__ = "0.1.0"

from .hypernum import HyperNumber, conj, hexp, invert, polar, sq_modulus
from .hyperspace import GMatrix2, HyperState, g_inner
from .kolmogorov import ContextStatistics, FiniteContextSpace, context_stats, hyp8, load_space
from .interference import DisturbanceProfile, classify, lambda_coefficients, phases
from .qlra import Representation, represent

__all__ = [
    "__version__",
    "HyperNumber",
    "conj",
    "hexp",
    "invert",
    "polar",
    "sq_modulus",
    "GMatrix2",
    "HyperState",
    "g_inner",
    "ContextStatistics",
    "FiniteContextSpace",
    "context_stats",
    "hyp8",
    "load_space",
    "DisturbanceProfile",
    "classify",
    "lambda_coefficients",
    "phases",
    "Representation",
    "represent",
]
