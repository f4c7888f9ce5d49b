"""Per-subband noise power estimation across frames.

A minima-controlled recursive-averaging tracker: per-frame subband powers
are smoothed recursively, the minimum over a short window is taken as the
noise floor, and a fixed bias factor compensates the minimum's downward
bias.  Teager-domain and coefficient-domain powers are tracked side by
side because the threshold can be driven from either.

An oracle mode pins both estimates to the empirical powers of supplied
noise-only frames and freezes further updates (deterministic tests, and
the --noise-oracle CLI flag).
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

import numpy as np

from .pwpt import SubbandSet
from .teager import TeCoeffs, te_operator

POWER_FLOOR = 1e-12


class _MinTracker:
    """Smooth per-frame powers and expose the biased window minimum."""

    def __init__(self, n_subbands: int, alpha: float, window: int, bias: float):
        self.alpha = alpha
        self.bias = bias
        self.smoothed = np.zeros(n_subbands)
        self.window = deque(maxlen=window)
        self.estimate = np.full(n_subbands, POWER_FLOOR)

    def update(self, power: np.ndarray, bootstrap: bool) -> None:
        if not self.window:
            self.smoothed = power.copy()
        else:
            self.smoothed = self.alpha * self.smoothed + (1.0 - self.alpha) * power
        self.window.append(self.smoothed.copy())
        if bootstrap:
            est = self.smoothed
        else:
            est = self.bias * np.min(np.stack(self.window), axis=0)
        self.estimate = np.maximum(est, POWER_FLOOR)


class NoiseState:
    """Recursive noise-power estimates with minima tracking, one per stream."""

    BOOTSTRAP_FRAMES = 3

    def __init__(
        self,
        n_subbands: int = 24,
        alpha_smooth: float = 0.85,
        min_window: int = 8,
        bias: float = 1.5,
    ):
        self._te = _MinTracker(n_subbands, alpha_smooth, min_window, bias)
        self._pwp = _MinTracker(n_subbands, alpha_smooth, min_window, bias)
        self.frame_count = 0
        self.oracle = False

    @property
    def sigma_n2(self) -> np.ndarray:
        """Noise power of the Teager-domain values, per subband."""
        return self._te.estimate

    @property
    def sigma_n2_pwp(self) -> np.ndarray:
        """Noise power of the subband coefficients, per subband."""
        return self._pwp.estimate

    def update(self, te: TeCoeffs, sb: SubbandSet) -> "NoiseState":
        """Advance the tracker by one frame; no-op in oracle mode."""
        if self.oracle:
            return self
        te_power = np.array([np.mean(np.maximum(t, 0.0)) for t in te.values])
        pwp_power = np.array([np.mean(w * w) for w in sb.coeffs])
        self.frame_count += 1
        bootstrap = self.frame_count <= self.BOOTSTRAP_FRAMES
        self._te.update(te_power, bootstrap)
        self._pwp.update(pwp_power, bootstrap)
        return self

    def set_oracle(self, noise_frames: Sequence[SubbandSet]) -> "NoiseState":
        """Pin estimates to the empirical powers of noise-only frames."""
        if not noise_frames:
            raise ValueError("no noise frames supplied")
        n = len(noise_frames[0].coeffs)
        te_sum = np.zeros(n)
        pwp_sum = np.zeros(n)
        counts = np.zeros(n)
        for sb in noise_frames:
            te = te_operator(sb)
            for k in range(n):
                te_sum[k] += np.sum(np.maximum(te.values[k], 0.0))
                pwp_sum[k] += np.sum(sb.coeffs[k] ** 2)
                counts[k] += sb.coeffs[k].size
        self._te.estimate = np.maximum(te_sum / counts, POWER_FLOOR)
        self._pwp.estimate = np.maximum(pwp_sum / counts, POWER_FLOOR)
        self.oracle = True
        return self
