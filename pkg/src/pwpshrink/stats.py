"""Histograms, candidate coefficient PDFs, K-L divergences, and AIC scoring.

Three densities can be fitted to subband energy values: the variance-
parameterized Erlang-2 (gamma with shape 2), a zero-mean Gaussian, and a
location-0 Student t.  The Erlang-2 rate is lambda = sqrt(2 / sigma2), so
`scale` is the model variance for both one-parameter densities.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import optimize

log = logging.getLogger(__name__)

ERLANG2 = "Erlang2"
GAUSSIAN = "Gaussian"
STUDENT_T = "StudentT"

_DATA_FLOOR = 1e-12


@dataclass
class Histogram:
    bin_edges: np.ndarray
    probs: np.ndarray


@dataclass
class PdfModel:
    kind: str
    scale: float           # variance for Erlang2/Gaussian, scale parameter for StudentT
    dof: float = 0.0       # StudentT only

    def __post_init__(self):
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be finite and positive, got {self.scale}")


def histogram(data: np.ndarray, n_bins: int) -> Histogram:
    """Equal-width bins over [min, max]; probabilities sum to 1."""
    data = np.asarray(data, dtype=np.float64)
    if data.size == 0:
        raise ValueError("empty data")
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    lo, hi = float(data.min()), float(data.max())
    if hi <= lo:
        hi = lo + 1e-12
    counts, edges = np.histogram(data, bins=n_bins, range=(lo, hi))
    return Histogram(bin_edges=edges, probs=counts / data.size)


def default_bins(n_values: int) -> int:
    return max(2, int(np.ceil(np.sqrt(n_values))))


def erlang2_rate(sigma2: float) -> float:
    return math.sqrt(2.0 / sigma2)


def pdf_eval(model: PdfModel, x: float) -> float:
    """Density of the model at x (vectorizes over array x)."""
    x = np.asarray(x, dtype=np.float64)
    if model.kind == ERLANG2:
        lam = erlang2_rate(model.scale)
        xp = np.where(x >= 0, x, 0.0)  # keeps exp() finite for negative x
        dens = np.where(x >= 0, lam * lam * xp * np.exp(-lam * xp), 0.0)
        return dens if dens.ndim else float(dens)
    if model.kind == GAUSSIAN:
        dens = np.exp(-(x * x) / (2.0 * model.scale)) / math.sqrt(2.0 * math.pi * model.scale)
        return dens if dens.ndim else float(dens)
    if model.kind == STUDENT_T:
        nu, s = model.dof, model.scale
        if nu <= 0:
            raise ValueError("StudentT requires dof > 0")
        z = x / s
        lognorm = (
            math.lgamma((nu + 1.0) / 2.0)
            - math.lgamma(nu / 2.0)
            - 0.5 * math.log(nu * math.pi)
            - math.log(s)
        )
        dens = np.exp(lognorm - (nu + 1.0) / 2.0 * np.log1p(z * z / nu))
        return dens if dens.ndim else float(dens)
    raise ValueError(f"unknown model kind {model.kind!r}")


def _check_pair(p: Histogram, q: Histogram) -> None:
    if p.bin_edges.shape != q.bin_edges.shape or not np.allclose(
        p.bin_edges, q.bin_edges, rtol=0, atol=0
    ):
        raise ValueError("histograms must share identical bin edges")
    bad = (q.probs == 0) & (p.probs > 0)
    if np.any(bad):
        raise ValueError("absolute continuity violated: q has empty bins where p does not")


def kl_divergence(p: Histogram, q: Histogram) -> float:
    """sum p_i ln(p_i / q_i); zero-probability p bins contribute nothing."""
    _check_pair(p, q)
    mask = p.probs > 0
    return float(np.sum(p.probs[mask] * np.log(p.probs[mask] / q.probs[mask])))


def skl_divergence(p: Histogram, q: Histogram) -> float:
    """Symmetrized K-L divergence, (KL(p,q) + KL(q,p)) / 2."""
    return 0.5 * (kl_divergence(p, q) + kl_divergence(q, p))


def log_likelihood(model: PdfModel, data: np.ndarray) -> float:
    """Total log-likelihood of data under the model (Erlang2 clamps to >= 1e-12)."""
    data = np.asarray(data, dtype=np.float64)
    if model.kind == ERLANG2:
        x = np.maximum(data, _DATA_FLOOR)
        lam = erlang2_rate(model.scale)
        return float(np.sum(2.0 * math.log(lam) + np.log(x) - lam * x))
    if model.kind == GAUSSIAN:
        s2 = model.scale
        return float(-0.5 * data.size * math.log(2.0 * math.pi * s2) - np.sum(data * data) / (2.0 * s2))
    if model.kind == STUDENT_T:
        nu, s = model.dof, model.scale
        z = data / s
        lognorm = (
            math.lgamma((nu + 1.0) / 2.0)
            - math.lgamma(nu / 2.0)
            - 0.5 * math.log(nu * math.pi)
            - math.log(s)
        )
        return float(np.sum(lognorm - (nu + 1.0) / 2.0 * np.log1p(z * z / nu)))
    raise ValueError(f"unknown model kind {model.kind!r}")


def n_params(kind: str) -> int:
    return 2 if kind == STUDENT_T else 1


def _fit_student_t(data: np.ndarray) -> PdfModel:
    """Grid over integer dof then golden-section refinement, scale profiled out."""

    def best_scale_loglik(nu: float) -> Tuple[float, float]:
        spread = float(np.sqrt(np.mean(data * data))) or 1.0

        def neg(log_s: float) -> float:
            return -log_likelihood(PdfModel(STUDENT_T, math.exp(log_s), nu), data)

        res = optimize.minimize_scalar(
            neg, bounds=(math.log(spread) - 8.0, math.log(spread) + 8.0), method="bounded"
        )
        return math.exp(res.x), -res.fun

    grid = [(nu, *best_scale_loglik(nu)) for nu in range(1, 31)]
    nu0, scale0, loglik0 = max(grid, key=lambda item: item[2])

    def neg_profile(nu: float) -> float:
        return -best_scale_loglik(nu)[1]

    res = optimize.minimize_scalar(
        neg_profile, bounds=(max(nu0 - 1.0, 0.5), nu0 + 1.0), method="bounded",
        options={"xatol": 1e-4},
    )
    nu_hat = float(res.x)
    scale_hat, loglik_hat = best_scale_loglik(nu_hat)
    if loglik_hat < loglik0:  # refinement never loses to the grid point
        nu_hat, scale_hat = float(nu0), scale0
    return PdfModel(STUDENT_T, scale_hat, nu_hat)


def aic_index(data: np.ndarray, model_kind: str) -> Tuple[PdfModel, float]:
    """Fit the model by maximum likelihood and return (model, 2k - 2 ln L)."""
    data = np.asarray(data, dtype=np.float64)
    if data.size == 0:
        raise ValueError("empty data")
    if model_kind == ERLANG2:
        n_clamped = int(np.sum(data < _DATA_FLOOR))
        if n_clamped:
            log.debug("aic_index: clamped %d non-positive values to %g", n_clamped, _DATA_FLOOR)
        x = np.maximum(data, _DATA_FLOOR)
        mean = float(np.mean(x))
        model = PdfModel(ERLANG2, mean * mean / 2.0)
    elif model_kind == GAUSSIAN:
        model = PdfModel(GAUSSIAN, max(float(np.mean(data * data)), _DATA_FLOOR))
    elif model_kind == STUDENT_T:
        model = _fit_student_t(data)
    else:
        raise ValueError(f"unknown model kind {model_kind!r}")
    aic = 2.0 * n_params(model_kind) - 2.0 * log_likelihood(model, data)
    return model, aic
