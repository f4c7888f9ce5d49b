"""Shape-blended shrinkage of subband coefficients.

One rule spans the family between semisoft thresholding and mu-law
companding: coefficients below the lower knee are mu-law compressed and
scaled by the shape parameter, coefficients above the upper knee pass
unchanged, and in between the semisoft ramp and the identity are blended
by the shape parameter.  alpha = 0 is exactly semisoft, alpha = 1 exactly
mu-law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_LAMBDA_TINY = 1e-300


@dataclass
class ShrinkConfig:
    mu: float = 0.9
    alpha_mode: str = "dynamic"   # 'dynamic' or 'fixed'
    alpha_fixed: float = 0.5

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("mu must be positive")


def apply_shrink(y: float, lambda1: float, lambda2: float, alpha: float, mu: float) -> float:
    """Shrink one coefficient; odd in y and continuous at both knees."""
    if not 0.0 < lambda1 < lambda2:
        raise ValueError(f"need 0 < lambda1 < lambda2, got {lambda1}, {lambda2}")
    mag = abs(y)
    sign = math.copysign(1.0, y)
    if mag <= lambda1:
        # exp-form of (1+mu)**(mag/lambda1) stays stable for tiny lambda1
        compressed = (mag / mu) * (math.exp(mag / lambda1 * math.log1p(mu)) - 1.0)
        return alpha * sign * compressed
    if mag >= lambda2:
        return y
    ramp = sign * lambda2 * (mag - lambda1) / (lambda2 - lambda1)
    return (1.0 - alpha) * ramp + alpha * y


def shrink_array(
    y: np.ndarray, lambda1: float, lambda2: float, alpha: np.ndarray | float, mu: float
) -> np.ndarray:
    """Vectorized apply_shrink over one subband.

    A lambda1 at or below the numeric floor means no usable noise estimate;
    every coefficient then sits above the upper knee and passes through.
    """
    y = np.asarray(y, dtype=np.float64)
    if lambda1 <= _LAMBDA_TINY:
        return y.copy()
    mag = np.abs(y)
    sign = np.sign(y)
    alpha = np.broadcast_to(np.asarray(alpha, dtype=np.float64), y.shape)

    below = mag <= lambda1
    above = mag >= lambda2
    middle = ~(below | above)

    out = np.empty_like(y)
    exponent = np.exp(mag[below] / lambda1 * math.log1p(mu))
    out[below] = alpha[below] * sign[below] * (mag[below] / mu) * (exponent - 1.0)
    out[above] = y[above]
    ramp = sign[middle] * lambda2 * (mag[middle] - lambda1) / (lambda2 - lambda1)
    out[middle] = (1.0 - alpha[middle]) * ramp + alpha[middle] * y[middle]
    return out
