"""Behavior of the two objective quality measures.

Segmental SNR averages per-frame SNRs clamped to [-10, 35] dB; the
weighted spectral slope compares critical-band log-energy slopes and is
0 for identical signals.  Both should track the mixing SNR monotonically.
"""

import numpy as np

from pwpshrink import AudioBuffer, mix_at_snr, snrseg, wss

fs = 8000
t = np.arange(2 * fs) / fs
env = 0.2 + 0.8 * np.sin(2 * np.pi * 1.7 * t) ** 2
clean = AudioBuffer(env * (0.5 * np.sin(2 * np.pi * 220 * t) + 0.3 * np.sin(2 * np.pi * 440 * t)), fs)
noise = AudioBuffer(np.random.default_rng(5).standard_normal(t.size), fs)

print("mix SNR ->  SNRSeg      WSS")
for snr in (20, 10, 5, 0, -5, -10):
    noisy = mix_at_snr(clean, noise, snr)
    print(f"{snr:7d} {snrseg(clean, noisy):9.2f} {wss(clean, noisy):9.1f}")

print(f"\nidentical signals: SNRSeg {snrseg(clean, clean):.1f} dB (ceiling), WSS {wss(clean, clean):.1f}")
