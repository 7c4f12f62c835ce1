"""Six-vertex model with domain wall boundary and half-turn symmetry.

Exact partition functions by enumeration, Hankel determinants and
orthogonal-polynomial norms, plus numerical checks of their large-size
asymptotics.
"""
from .core_model import (DEFAULT_PRECISION_BITS, BoltzmannWeights, PhaseParams, PhaseRegion,
                         classify_phase, delta, reduce_general_weights, weights_from_params)
from .enumerator import count_configurations, enumerate_dwbc, partition_dwbc, partition_ht
from .errors import SixVertexError
from .hankel import norm_sequence, tau_dw, tau_ht, z_dw, z_ht, z_ht_via_norms
from .kernel import BACKEND

__all__ = [
    "BACKEND", "DEFAULT_PRECISION_BITS", "BoltzmannWeights", "PhaseParams", "PhaseRegion",
    "SixVertexError", "classify_phase", "count_configurations", "delta", "enumerate_dwbc",
    "norm_sequence", "partition_dwbc", "partition_ht", "reduce_general_weights", "tau_dw",
    "tau_ht", "weights_from_params", "z_dw", "z_ht", "z_ht_via_norms",
]
__version__ = "0.1.0"
