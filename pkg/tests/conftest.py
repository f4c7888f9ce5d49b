import numpy as np
import pytest

from pwpshrink import AudioBuffer

FS = 8000


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def make_speech(duration_s: float = 3.0, fs: int = FS) -> AudioBuffer:
    """Synthetic harmonic 'speech': three AM sinusoids with deep troughs."""
    t = np.arange(int(duration_s * fs)) / fs
    env = 0.15 + 0.85 * (0.5 * (1.0 + np.sin(2 * np.pi * 2.3 * t))) ** 2
    x = env * (
        0.5 * np.sin(2 * np.pi * 150.0 * t)
        + 0.35 * np.sin(2 * np.pi * 300.0 * t)
        + 0.25 * np.sin(2 * np.pi * 450.0 * t)
    )
    return AudioBuffer(x, fs)


def make_white_noise(duration_s: float, fs: int = FS, seed: int = 7, scale: float = 1.0) -> AudioBuffer:
    gen = np.random.default_rng(seed)
    return AudioBuffer(scale * gen.standard_normal(int(duration_s * fs)), fs)
