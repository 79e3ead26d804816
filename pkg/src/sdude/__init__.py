"""Sliding-window and switching discrete denoising for DMC-corrupted data.

The package provides the count-based sliding-window denoiser, its shifting
generalization driven by a two-pass dynamic program over switching rule
schedules, hindsight (genie) targets with exhaustive oracles, stochastic
source and channel simulators, an exact smoothing baseline for switching
hidden Markov processes, and reproducible experiment harnesses.
"""

from .contexts import ContextPartition, build_partition, count_vector
from .core import (
    Alphabets,
    ChannelModel,
    LossMatrix,
    SingleSymbolDenoiser,
    SymbolSequence,
    all_denoiser_mappings,
    apply_denoiser,
    as_sequence,
    bsc_channel,
    build_channel,
    build_loss,
    denoiser_from_index,
    denoiser_index,
    hamming_loss,
    identity_channel,
)
from .dude import dude_denoise
from .errors import (
    DenoiseError,
    RangeError,
    RankError,
    SequenceTooShort,
    TooLarge,
    ValidationError,
)
from .estimation import (
    EstimatedLossTable,
    b_h_mapping,
    b_h_rule,
    bayes_envelope,
    bayes_response,
    build_tables,
)
from .evaluation import (
    DenoiserResult,
    EvalReport,
    concentration_sweep,
    cumulative_loss,
    run_switching_hmm_experiment,
    run_two_block_experiment,
    two_block_sequence,
)
from .genie import brute_force_min, genie_min_loss
from .hmm import fb_posteriors, map_denoise
from .sources import (
    IIDComponent,
    MarkovComponent,
    PiecewiseSourceSpec,
    corrupt,
    sample_piecewise,
    stationary_distribution,
)
from .switching import (
    DPState,
    SwitchingSchedule,
    backward_pass,
    forward_pass,
    sdude_denoise,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabets",
    "ChannelModel",
    "ContextPartition",
    "DPState",
    "DenoiseError",
    "DenoiserResult",
    "EstimatedLossTable",
    "EvalReport",
    "IIDComponent",
    "LossMatrix",
    "MarkovComponent",
    "PiecewiseSourceSpec",
    "RangeError",
    "RankError",
    "SequenceTooShort",
    "SingleSymbolDenoiser",
    "SwitchingSchedule",
    "SymbolSequence",
    "TooLarge",
    "ValidationError",
    "all_denoiser_mappings",
    "apply_denoiser",
    "as_sequence",
    "b_h_mapping",
    "b_h_rule",
    "backward_pass",
    "bayes_envelope",
    "bayes_response",
    "brute_force_min",
    "bsc_channel",
    "build_channel",
    "build_loss",
    "build_partition",
    "build_tables",
    "concentration_sweep",
    "corrupt",
    "count_vector",
    "cumulative_loss",
    "denoiser_from_index",
    "denoiser_index",
    "dude_denoise",
    "fb_posteriors",
    "forward_pass",
    "genie_min_loss",
    "hamming_loss",
    "identity_channel",
    "map_denoise",
    "run_switching_hmm_experiment",
    "run_two_block_experiment",
    "sample_piecewise",
    "sdude_denoise",
    "stationary_distribution",
    "two_block_sequence",
]
