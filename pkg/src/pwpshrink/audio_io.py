"""PCM WAV reading/writing and SNR-controlled mixing.

Only RIFF/WAVE PCM 16-bit files are accepted; multi-channel input is
averaged down to mono.  Samples map to floats by division by 32768, so
the float range is [-1, 1).
"""

from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_PCM_SCALE = 32768.0
_PCM_MAX = 1.0 - 2.0 ** -15


class AudioIOError(Exception):
    """Base class for WAV file problems."""


class UnsupportedFormatError(AudioIOError):
    """Not PCM, or a bit depth other than 16."""


class MalformedWavError(AudioIOError):
    """Truncated or otherwise broken RIFF structure."""


@dataclass
class AudioBuffer:
    """Mono float samples plus their sample rate."""

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")

    def __len__(self) -> int:
        return len(self.samples)


def read_wav(path: str | Path) -> AudioBuffer:
    """Read a PCM16 WAV file as a mono buffer in [-1, 1).

    Raises FileNotFoundError for a missing file, UnsupportedFormatError for
    non-PCM data or bit depths other than 16, and MalformedWavError when the
    RIFF chunks are truncated.
    """
    path = Path(path)
    try:
        reader = wave.open(str(path), "rb")
    except FileNotFoundError:
        raise
    except wave.Error as exc:
        msg = str(exc)
        if "unknown format" in msg or "compression" in msg.lower():
            raise UnsupportedFormatError(f"{path}: {msg}") from exc
        raise MalformedWavError(f"{path}: {msg}") from exc
    except EOFError as exc:
        raise MalformedWavError(f"{path}: truncated RIFF header") from exc

    with reader:
        if reader.getsampwidth() != 2:
            raise UnsupportedFormatError(
                f"{path}: only 16-bit PCM supported, got {8 * reader.getsampwidth()}-bit"
            )
        n_channels = reader.getnchannels()
        n_frames = reader.getnframes()
        rate = reader.getframerate()
        raw = reader.readframes(n_frames)

    if len(raw) < n_frames * n_channels * 2:
        raise MalformedWavError(f"{path}: data chunk shorter than declared")
    if n_frames == 0:
        raise MalformedWavError(f"{path}: no samples")

    data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / _PCM_SCALE
    if n_channels > 1:
        data = data.reshape(-1, n_channels).mean(axis=1)
    return AudioBuffer(samples=data, sample_rate_hz=rate)


def write_wav(buf: AudioBuffer, path: str | Path) -> None:
    """Write a mono PCM16 WAV; samples clamped to [-1, 1 - 2**-15]."""
    samples = np.asarray(buf.samples, dtype=np.float64)
    if not np.all(np.isfinite(samples)):
        raise ValueError("samples must be finite")
    clamped = np.clip(samples, -1.0, _PCM_MAX)
    pcm = np.rint(clamped * _PCM_SCALE).astype("<i2")
    with wave.open(str(path), "wb") as writer:
        writer.setnchannels(1)
        writer.setsampwidth(2)
        writer.setframerate(buf.sample_rate_hz)
        writer.writeframes(pcm.tobytes())


def mix_at_snr(clean: AudioBuffer, noise: AudioBuffer, snr_db: float) -> AudioBuffer:
    """Add scaled noise to clean speech so the mixture SNR equals snr_db.

    The noise must be at least as long as the clean signal and is truncated
    to it; powers are measured over that extent.
    """
    if clean.sample_rate_hz != noise.sample_rate_hz:
        raise ValueError(
            f"sample-rate mismatch: {clean.sample_rate_hz} vs {noise.sample_rate_hz}"
        )
    n = len(clean.samples)
    if len(noise.samples) < n:
        raise ValueError("noise shorter than clean signal")
    noise_seg = noise.samples[:n]
    p_clean = float(np.mean(clean.samples**2))
    p_noise = float(np.mean(noise_seg**2))
    if p_clean <= 0.0:
        raise ValueError("clean signal has zero power")
    if p_noise <= 0.0:
        raise ValueError("noise has zero power")
    gain = np.sqrt(p_clean / (p_noise * 10.0 ** (snr_db / 10.0)))
    return AudioBuffer(clean.samples + gain * noise_seg, clean.sample_rate_hz)
