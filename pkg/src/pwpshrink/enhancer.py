"""Whole-stream enhancement: framing, subband shrinkage, overlap-add.

Frames are processed strictly in order because the noise tracker and the
a-priori SNR recursion carry state between frames.  Distinct streams own
distinct state bundles and may run on separate threads.
"""

from __future__ import annotations

import warnings
from typing import List, Optional, Tuple

import numpy as np

from .audio_io import AudioBuffer
from .config import EnhanceConfig
from .framing import FrameStack, overlap_add, split_frames
from .noise_tracker import NoiseState
from .presence import PresenceState
from .pwpt import PerceptualTree, SubbandSet, WaveletFilters, analyze, db10_filters, synthesize
from .shrink import shrink_array
from .teager import te_operator
from .threshold import compute_spec

EXPECTED_RATE_HZ = 8000


class Enhancer:
    """One enhancement stream: immutable transform objects plus mutable state."""

    def __init__(self, cfg: Optional[EnhanceConfig] = None):
        self.cfg = cfg or EnhanceConfig()
        self.cfg.validate()
        self.filters: WaveletFilters = db10_filters()
        self.tree = PerceptualTree(self.cfg.tree)
        self.noise = NoiseState(
            n_subbands=self.cfg.n_subbands,
            alpha_smooth=self.cfg.noise_smooth,
            min_window=self.cfg.noise_min_window,
            bias=self.cfg.noise_bias,
        )
        self.presence = PresenceState(self.cfg)

    def use_noise_oracle(self, noise: AudioBuffer) -> None:
        """Freeze the tracker at the empirical powers of a noise-only recording."""
        stack = split_frames(noise, self.cfg.frame_len)
        frames = [analyze(f, self.tree, self.filters) for f in stack.frames]
        self.noise.set_oracle(frames)

    def enhance_frame(self, frame: np.ndarray) -> np.ndarray:
        """Run one windowed frame through the subband pipeline."""
        sb = analyze(frame, self.tree, self.filters)
        te = te_operator(sb)
        self.noise.update(te, sb)
        self.presence.xi_recursion(te, self.noise)
        spec = compute_spec(self.noise, sb, self.cfg.variance_domain)
        if self.cfg.alpha_mode == "fixed":
            alphas: List = [self.cfg.alpha_fixed] * self.cfg.n_subbands
        else:
            alphas = self.presence.alpha_frame()
        shrunk = [
            shrink_array(w, spec.lambda1[k], spec.lambda2[k], alphas[k], self.cfg.mu)
            for k, w in enumerate(sb.coeffs)
        ]
        out = SubbandSet(coeffs=shrunk, tree=sb.tree, frame_len=sb.frame_len)
        return synthesize(out, self.filters)

    def enhance_stream(self, noisy: AudioBuffer) -> AudioBuffer:
        """Enhance a whole buffer; output length equals input length."""
        if noisy.sample_rate_hz != EXPECTED_RATE_HZ:
            warnings.warn(
                f"sample rate {noisy.sample_rate_hz} Hz differs from the "
                f"{EXPECTED_RATE_HZ} Hz the default tree assumes",
                stacklevel=2,
            )
        stack = split_frames(noisy, self.cfg.frame_len)
        processed = np.stack([self.enhance_frame(f) for f in stack.frames])
        out_stack = FrameStack(
            frames=processed,
            hop=stack.hop,
            window=stack.window,
            original_len=stack.original_len,
        )
        return overlap_add(out_stack, noisy.sample_rate_hz)


def enhance_frame(
    frame: np.ndarray,
    noise: NoiseState,
    presence: PresenceState,
    cfg: EnhanceConfig,
) -> Tuple[np.ndarray, NoiseState, PresenceState]:
    """Functional wrapper around one pipeline step with caller-owned states."""
    enh = Enhancer(cfg)
    enh.noise = noise
    enh.presence = presence
    return enh.enhance_frame(np.asarray(frame, dtype=np.float64)), noise, presence


def enhance_stream(
    noisy: AudioBuffer,
    cfg: Optional[EnhanceConfig] = None,
    noise_oracle: Optional[AudioBuffer] = None,
) -> AudioBuffer:
    """Enhance a buffer with fresh state, optionally pinned to oracle noise."""
    enh = Enhancer(cfg)
    if noise_oracle is not None:
        enh.use_noise_oracle(noise_oracle)
    return enh.enhance_stream(noisy)
