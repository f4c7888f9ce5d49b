"""Subband-adaptive threshold formulas.

The working threshold assumes the coefficient energies follow an Erlang-2
law; the Gaussian and Student-t expressions are carried along for curve
comparisons only.  All three scale linearly in the noise standard
deviation for fixed a-posteriori SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise_tracker import POWER_FLOOR, NoiseState
from .pwpt import SubbandSet
from .teager import te_operator

GAMMA_FLOOR = 1e-6
GAMMA_CAP = 1e6


@dataclass
class ThresholdSpec:
    lambda1: np.ndarray   # lower knee per subband
    lambda2: np.ndarray   # upper knee, always 2 * lambda1
    gamma: np.ndarray     # a-posteriori SNR per subband
    chi2: float = 0.5


def _check_positive(sigma_n2: float, gamma: float) -> None:
    if sigma_n2 <= 0:
        raise ValueError(f"sigma_n2 must be positive, got {sigma_n2}")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")


def lambda_erlang(sigma_n2: float, gamma: float) -> float:
    """sqrt(sigma_n2) * gamma * ln(gamma) / (sqrt(gamma) - 1).

    The singularity at gamma = 1 is removable with limit 2 * sqrt(sigma_n2).
    """
    _check_positive(sigma_n2, gamma)
    root = math.sqrt(gamma)
    if abs(root - 1.0) < 1e-12:
        return 2.0 * math.sqrt(sigma_n2)
    return math.sqrt(sigma_n2) * gamma * math.log(gamma) / (root - 1.0)


def lambda_gaussian(sigma_n2: float, gamma: float) -> float:
    """sqrt(sigma_n2) * sqrt(2 (gamma + gamma^2)) * ln(sqrt(1 + 1/gamma))."""
    _check_positive(sigma_n2, gamma)
    return (
        math.sqrt(sigma_n2)
        * math.sqrt(2.0 * (gamma + gamma * gamma))
        * math.log(math.sqrt(1.0 + 1.0 / gamma))
    )


def lambda_student(sigma_n2: float, gamma: float, chi2: float = 0.5) -> float:
    """sqrt( sigma_n2 (1+gamma) / ((sqrt(1+gamma) + 2 + gamma) sqrt(chi2^2)) )."""
    _check_positive(sigma_n2, gamma)
    if chi2 <= 0:
        raise ValueError(f"chi2 must be positive, got {chi2}")
    denom = (math.sqrt(1.0 + gamma) + 2.0 + gamma) * math.sqrt(chi2 * chi2)
    return math.sqrt(sigma_n2 * (1.0 + gamma) / denom)


def compute_spec(noise: NoiseState, sb: SubbandSet, mode: str = "pwp") -> ThresholdSpec:
    """Per-subband Erlang-2 thresholds from the current frame's statistics.

    mode 'pwp' measures signal power and noise power on the subband
    coefficients; mode 'te' uses the rectified Teager-domain values.
    """
    if mode == "pwp":
        sigma = noise.sigma_n2_pwp
        signal_power = np.array([float(np.mean(w * w)) for w in sb.coeffs])
    elif mode == "te":
        sigma = noise.sigma_n2
        te = te_operator(sb)
        signal_power = np.array([float(np.mean(np.maximum(t, 0.0))) for t in te.values])
    else:
        raise ValueError(f"mode must be 'pwp' or 'te', got {mode!r}")
    gamma = np.clip(signal_power / sigma, GAMMA_FLOOR, GAMMA_CAP)
    # a floored noise estimate means "no noise seen": threshold collapses to 0
    # and the shrinkage rule passes those subbands through unchanged
    lam1 = np.array([
        0.0 if s <= POWER_FLOOR else lambda_erlang(s, g) for s, g in zip(sigma, gamma)
    ])
    return ThresholdSpec(lambda1=lam1, lambda2=2.0 * lam1, gamma=gamma)
