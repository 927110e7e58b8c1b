"""Truncated Fock-space simulation and cumulant statistics for Kerr vs
quadratic bosonic evolution, with analytic cross-checks, channel models and
experiment design helpers."""

from . import acceptance, analytic, channels, cumulants, errors, experiment, fock, util
from .cumulants import CumulantSet, KStatistics, cumulants_from_moments, k_statistics
from .fock import (KerrParams, MixedState, PureState, SqueezeParams,
                   coherent_state, kerr_evolve, phase_evolve, quadrature_moments,
                   squeezed_coherent_state, yurke_stoler_state)

__all__ = [
    "acceptance", "analytic", "channels", "cumulants", "errors", "experiment",
    "fock", "util",
    "CumulantSet", "KStatistics", "cumulants_from_moments", "k_statistics",
    "KerrParams", "MixedState", "PureState", "SqueezeParams",
    "coherent_state", "kerr_evolve", "phase_evolve", "quadrature_moments",
    "squeezed_coherent_state", "yurke_stoler_state",
]

__version__ = "0.1.0"
