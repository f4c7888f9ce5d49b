"""Speech enhancement by subband-adaptive wavelet packet thresholding.

Noisy speech is decomposed into 24 perceptually spaced wavelet packet
subbands, the Teager energy of each subband drives per-subband noise and
speech-presence statistics, and a shape-blended shrinkage rule (semisoft
to mu-law) attenuates each coefficient before exact resynthesis.
"""

from .audio_io import AudioBuffer, mix_at_snr, read_wav, write_wav
from .config import EnhanceConfig, load_config, parse_config
from .enhancer import Enhancer, enhance_frame, enhance_stream
from .framing import FrameStack, overlap_add, split_frames
from .metrics import MetricReport, evaluate, snrseg, snrseg_improvement, wss
from .noise_tracker import NoiseState
from .presence import PresenceState
from .pwpt import (
    PerceptualTree,
    SubbandSet,
    WaveletFilters,
    analyze,
    build_tree,
    db10_filters,
    load_tree,
    synthesize,
)
from .shrink import ShrinkConfig, apply_shrink, shrink_array
from .stats import Histogram, PdfModel, aic_index, histogram, kl_divergence, pdf_eval, skl_divergence
from .teager import TeCoeffs, te_operator
from .threshold import ThresholdSpec, compute_spec, lambda_erlang, lambda_gaussian, lambda_student

__version__ = "0.1.0"

__all__ = [
    "AudioBuffer",
    "EnhanceConfig",
    "Enhancer",
    "FrameStack",
    "Histogram",
    "MetricReport",
    "NoiseState",
    "PdfModel",
    "PerceptualTree",
    "PresenceState",
    "ShrinkConfig",
    "SubbandSet",
    "TeCoeffs",
    "ThresholdSpec",
    "WaveletFilters",
    "aic_index",
    "analyze",
    "apply_shrink",
    "build_tree",
    "compute_spec",
    "db10_filters",
    "enhance_frame",
    "enhance_stream",
    "evaluate",
    "histogram",
    "kl_divergence",
    "lambda_erlang",
    "lambda_gaussian",
    "lambda_student",
    "load_config",
    "load_tree",
    "mix_at_snr",
    "overlap_add",
    "parse_config",
    "pdf_eval",
    "read_wav",
    "shrink_array",
    "skl_divergence",
    "snrseg",
    "snrseg_improvement",
    "split_frames",
    "synthesize",
    "te_operator",
    "wss",
    "write_wav",
]
