"""Objective quality measures: segmental SNR and weighted spectral slope.

Both work on 256-sample frames with 50% overlap at 8 kHz.  Segmental SNR
clamps each frame to [-10, 35] dB, the usual convention that keeps silent
and near-perfect frames from dominating the mean.  The weighted spectral
slope compares adjacent critical-band log-energy slopes, weighting each
band by its proximity to the frame's spectral peak and to the nearest
local maximum; lower is better.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer

FRAME_LEN = 256
HOP = 128
SNR_FLOOR_DB = -10.0
SNR_CEIL_DB = 35.0

# 25 critical bands below 4 kHz: center frequencies and bandwidths in Hz,
# Bark-spaced per the classic speech-quality evaluation recipe.
_CENT_FREQ = np.array([
    50.0, 120.0, 190.0, 260.0, 330.0, 400.0, 470.0, 540.0, 617.372,
    703.378, 798.717, 904.128, 1020.38, 1148.30, 1288.72, 1442.54,
    1610.70, 1794.16, 1993.93, 2211.08, 2446.71, 2701.97, 2978.04,
    3276.17, 3597.63,
])
_BANDWIDTH = np.array([
    70.0, 70.0, 70.0, 70.0, 70.0, 70.0, 70.0, 77.3724, 86.0056,
    95.3398, 105.411, 116.256, 127.914, 140.423, 153.823, 168.154,
    183.457, 199.776, 217.153, 235.631, 255.255, 276.072, 298.126,
    321.465, 346.136,
])
_K_MAX = 20.0
_K_LOCMAX = 1.0


@dataclass
class MetricReport:
    snrseg_db: float
    snrseg_improvement_db: float
    wss: float


def _frame_pairs(a: np.ndarray, b: np.ndarray):
    n_frames = (a.size - FRAME_LEN) // HOP + 1
    for i in range(max(n_frames, 0)):
        start = i * HOP
        yield a[start : start + FRAME_LEN], b[start : start + FRAME_LEN]


def _check_aligned(clean: AudioBuffer, test: AudioBuffer) -> None:
    if len(clean.samples) != len(test.samples):
        raise ValueError("buffers must have equal length")
    if clean.sample_rate_hz != test.sample_rate_hz:
        raise ValueError("buffers must have equal sample rate")


def snrseg(clean: AudioBuffer, test: AudioBuffer) -> float:
    """Mean per-frame SNR in dB, each frame clamped to [-10, 35]."""
    _check_aligned(clean, test)
    values = []
    for s, t in _frame_pairs(clean.samples, test.samples):
        sig = float(np.sum(s * s))
        if sig <= 0.0:
            continue
        err = float(np.sum((s - t) ** 2))
        if err == 0.0:
            values.append(SNR_CEIL_DB)
        else:
            values.append(float(np.clip(10.0 * np.log10(sig / err), SNR_FLOOR_DB, SNR_CEIL_DB)))
    if not values:
        raise ValueError("clean signal is silent in every frame")
    return float(np.mean(values))


def snrseg_improvement(clean: AudioBuffer, noisy: AudioBuffer, enhanced: AudioBuffer) -> float:
    return snrseg(clean, enhanced) - snrseg(clean, noisy)


def _critical_filters(sample_rate_hz: int, n_fft: int) -> np.ndarray:
    n_half = n_fft // 2
    max_freq = sample_rate_hz / 2.0
    min_factor = np.exp(-30.0 / (2.0 * 2.303))  # -30 dB skirt cutoff
    filters = np.zeros((_CENT_FREQ.size, n_half))
    bins = np.arange(n_half)
    for i in range(_CENT_FREQ.size):
        f0 = (_CENT_FREQ[i] / max_freq) * n_half
        bw = (_BANDWIDTH[i] / max_freq) * n_half
        norm = np.log(_BANDWIDTH[0]) - np.log(_BANDWIDTH[i])
        shape = np.exp(-11.0 * ((bins - np.floor(f0)) / bw) ** 2 + norm)
        filters[i] = np.where(shape > min_factor, shape, 0.0)
    return filters


def _band_energies_db(frame: np.ndarray, filters: np.ndarray, n_fft: int) -> np.ndarray:
    spec = np.abs(np.fft.rfft(frame, n_fft)) ** 2
    energy = filters @ spec[: n_fft // 2]
    return 10.0 * np.log10(np.maximum(energy, 1e-10))


def _nearest_peaks(energy: np.ndarray, slope: np.ndarray) -> np.ndarray:
    """Energy of the nearest local spectral maximum for each band slope."""
    n = slope.size
    peaks = np.empty(n)
    for i in range(n):
        j = i
        if slope[i] > 0:
            while j < n and slope[j] > 0:
                j += 1
            peaks[i] = energy[j - 1]
        else:
            while j >= 0 and slope[j] <= 0:
                j -= 1
            peaks[i] = energy[j + 1]
    return peaks


def wss(clean: AudioBuffer, test: AudioBuffer) -> float:
    """Weighted spectral slope distance; 0 for identical signals."""
    _check_aligned(clean, test)
    n_fft = 2 * FRAME_LEN
    filters = _critical_filters(clean.sample_rate_hz, n_fft)
    window = np.hanning(FRAME_LEN)
    distortions = []
    for s, t in _frame_pairs(clean.samples, test.samples):
        e_clean = _band_energies_db(s * window, filters, n_fft)
        e_test = _band_energies_db(t * window, filters, n_fft)
        slope_clean = np.diff(e_clean)
        slope_test = np.diff(e_test)

        peak_clean = _nearest_peaks(e_clean, slope_clean)
        peak_test = _nearest_peaks(e_test, slope_test)

        w_clean = (_K_MAX / (_K_MAX + e_clean.max() - e_clean[:-1])) * (
            _K_LOCMAX / (_K_LOCMAX + peak_clean - e_clean[:-1])
        )
        w_test = (_K_MAX / (_K_MAX + e_test.max() - e_test[:-1])) * (
            _K_LOCMAX / (_K_LOCMAX + peak_test - e_test[:-1])
        )
        weights = 0.5 * (w_clean + w_test)
        diff = slope_clean - slope_test
        distortions.append(float(np.dot(weights, diff * diff) / np.sum(weights)))
    if not distortions:
        raise ValueError("signal shorter than one metric frame")
    return float(np.mean(distortions))


def evaluate(clean: AudioBuffer, noisy: AudioBuffer, enhanced: AudioBuffer) -> MetricReport:
    return MetricReport(
        snrseg_db=snrseg(clean, enhanced),
        snrseg_improvement_db=snrseg_improvement(clean, noisy, enhanced),
        wss=wss(clean, enhanced),
    )
