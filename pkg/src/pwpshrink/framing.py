"""Overlapping Hamming-windowed framing with overlap-add reconstruction.

The window is the periodic (DFT-even) Hamming window, whose 50%-overlap
sum is the exact constant 1.08 away from the signal edges, so the
split -> overlap-add round trip is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer

_WINDOW_FLOOR = 1e-8


def hamming_periodic(n: int) -> np.ndarray:
    """Periodic Hamming window: 0.54 - 0.46*cos(2*pi*k/n)."""
    return 0.54 - 0.46 * np.cos(2.0 * np.pi * np.arange(n) / n)


@dataclass
class FrameStack:
    frames: np.ndarray        # (n_frames, frame_len), already windowed
    hop: int
    window: np.ndarray
    original_len: int


def split_frames(buf: AudioBuffer, frame_len: int = 640) -> FrameStack:
    """Cut the signal into 50%-overlapped windowed frames, zero-padding the tail."""
    if frame_len < 4 or frame_len % 2:
        raise ValueError(f"frame_len must be even and >= 4, got {frame_len}")
    x = np.asarray(buf.samples, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty buffer")
    hop = frame_len // 2
    n_frames = int(np.ceil(max(x.size - frame_len, 0) / hop)) + 1
    padded = np.zeros((n_frames - 1) * hop + frame_len)
    padded[: x.size] = x
    window = hamming_periodic(frame_len)
    idx = np.arange(n_frames)[:, None] * hop + np.arange(frame_len)[None, :]
    frames = padded[idx] * window[None, :]
    return FrameStack(frames=frames, hop=hop, window=window, original_len=x.size)


def overlap_add(stack: FrameStack, sample_rate_hz: int = 8000) -> AudioBuffer:
    """Sum frames at their hops and divide by the realized window overlap."""
    frames = np.asarray(stack.frames, dtype=np.float64)
    if frames.ndim != 2:
        raise ValueError("frames must be a 2-D stack")
    n_frames, frame_len = frames.shape
    if frame_len != stack.window.size:
        raise ValueError("window length does not match frame length")
    total = (n_frames - 1) * stack.hop + frame_len
    out = np.zeros(total)
    wsum = np.zeros(total)
    for i in range(n_frames):
        start = i * stack.hop
        out[start : start + frame_len] += frames[i]
        wsum[start : start + frame_len] += stack.window
    out /= np.maximum(wsum, _WINDOW_FLOOR)
    return AudioBuffer(out[: stack.original_len], sample_rate_hz)
