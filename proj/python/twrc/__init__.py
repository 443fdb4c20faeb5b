"""Two-way relay space-time coding toolkit.

Thin wrapper over the compiled core: constellation construction,
singular fade subspace enumeration, distributed design analysis
(singularity minimality, coding gain), the relay's equivalent-channel
decoders, and the Monte Carlo BER sweep driver.
"""

from ._twrc import (
    SignalSet,
    build_h_eq,
    coding_gain,
    deep_fade,
    estimate_diversity_slope,
    exclusive_law_ok,
    generators,
    make_psk,
    make_square_qam,
    parse_signal_set,
    rank_spectrum,
    relay_decode,
    run_sweep,
    singularity_minimal,
    spatial_mux_subspaces,
    version,
)

__version__ = version()

__all__ = [
    "SignalSet",
    "build_h_eq",
    "coding_gain",
    "deep_fade",
    "estimate_diversity_slope",
    "exclusive_law_ok",
    "generators",
    "make_psk",
    "make_square_qam",
    "parse_signal_set",
    "rank_spectrum",
    "relay_decode",
    "run_sweep",
    "singularity_minimal",
    "spatial_mux_subspaces",
    "version",
]
