"""Speech-presence machinery driving the shape parameter.

A recursively averaged a-priori SNR per coefficient feeds local, global,
and per-subband presence probabilities; their product gives the speech-
absence probability q, and the shape parameter is
alpha = (1 + r) / (2 (1 + q)) with r = 1 - q, so alpha ranges over
[0.25, 1] from confident absence to confident presence.

Subbands have different coefficient counts, so the cross-subband windows
compare co-temporal coefficients: index m in subband k maps to
floor(m * M_j / M_k) in subband j.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from .config import EnhanceConfig
from .noise_tracker import NoiseState
from .teager import TeCoeffs

LOCAL = "local"
GLOBAL = "global"


class PresenceState:
    """A-priori SNR recursion state and running subband peak for one stream."""

    def __init__(self, cfg: Optional[EnhanceConfig] = None):
        cfg = cfg or EnhanceConfig()
        self.kappa = cfg.beta
        self.xi_min = cfg.xi_min
        self.xi_max = cfg.xi_max
        self.xi_peak_cap = cfg.xi_peak_cap
        self.w_local = cfg.w_local
        self.w_global = cfg.w_global
        self.recursion_mode = cfg.xi_recursion
        n = cfg.n_subbands
        self.xi: List[np.ndarray] = [np.full(1, self.xi_min) for _ in range(n)]
        self.xi_prev_frame = np.full(n, self.xi_min)
        self.xi_peak = self.xi_min
        self._eta_frame_prev = np.zeros(n)
        self._sub_means: Optional[np.ndarray] = None
        self._index_maps: Dict[Tuple[int, int], np.ndarray] = {}

    @property
    def n_subbands(self) -> int:
        return len(self.xi_prev_frame)

    # -- recursion ---------------------------------------------------------

    def xi_recursion(self, te: TeCoeffs, noise: NoiseState) -> "PresenceState":
        """Advance xi by one frame from the Teager-domain posterior SNR."""
        sigma = noise.sigma_n2
        eta = [
            np.maximum(np.maximum(t, 0.0) / sigma[k] - 1.0, 0.0)
            for k, t in enumerate(te.values)
        ]
        if self.recursion_mode == "frame":
            eta_mean = np.array([float(np.mean(e)) for e in eta])
            xi_now = self.kappa * self.xi_prev_frame + (1.0 - self.kappa) * self._eta_frame_prev
            self.xi = [np.full(e.size, xi_now[k]) for k, e in enumerate(eta)]
            self.xi_prev_frame = xi_now
            self._eta_frame_prev = eta_mean
        else:
            kappa = self.kappa
            out = []
            for k, e in enumerate(eta):
                m_count = e.size
                xi_k = np.empty(m_count)
                xi_k[0] = self.xi_prev_frame[k]
                for m in range(1, m_count):
                    xi_k[m] = kappa * xi_k[m - 1] + (1.0 - kappa) * e[m - 1]
                out.append(xi_k)
                self.xi_prev_frame[k] = xi_k[-1]
            self.xi = out
        self._sub_means = None
        return self

    # -- cross-subband windows ---------------------------------------------

    def _map_index(self, m_src: int, m_dst: int) -> np.ndarray:
        key = (m_src, m_dst)
        cached = self._index_maps.get(key)
        if cached is None:
            cached = np.minimum((np.arange(m_src) * m_dst) // m_src, m_dst - 1)
            self._index_maps[key] = cached
        return cached

    def _xi_tau_array(self, k: int, half_width: int) -> np.ndarray:
        """Rectangular cross-subband mean of xi, truncated and renormalized."""
        lo = max(0, k - half_width)
        hi = min(self.n_subbands - 1, k + half_width)
        m_k = self.xi[k].size
        acc = np.zeros(m_k)
        for j in range(lo, hi + 1):
            acc += self.xi[j][self._map_index(m_k, self.xi[j].size)]
        return acc / (hi - lo + 1)

    def _r_from_xi(self, value: float) -> float:
        if value <= self.xi_min:
            return 0.0
        if value >= self.xi_max:
            return 1.0
        return math.log(value / self.xi_min) / math.log(self.xi_max / self.xi_min)

    def r_tau(self, k: int, m: int, tau: str) -> float:
        """Local or global speech-presence probability for coefficient (k, m)."""
        if tau == LOCAL:
            half_width = self.w_local
        elif tau == GLOBAL:
            half_width = self.w_global
        else:
            raise ValueError(f"tau must be 'local' or 'global', got {tau!r}")
        return self._r_from_xi(float(self._xi_tau_array(k, half_width)[m]))

    # -- subband probability -----------------------------------------------

    def _subband_means(self) -> np.ndarray:
        if self._sub_means is None:
            self._sub_means = np.array([float(np.mean(x)) for x in self.xi])
            peak = max(self.xi_peak, float(self._sub_means.max()))
            self.xi_peak = min(max(peak, self.xi_min), self.xi_peak_cap)
        return self._sub_means

    def r_subband(self, k: int) -> float:
        """Per-subband presence probability from the frame's mean xi."""
        means = self._subband_means()
        value = means[k]
        if value < self.xi_min:
            return 0.0
        prev = means[k - 1] if k > 0 else means[k]
        if value > self.xi_min and (k == 0 or value > prev):
            return 1.0
        low = self.xi_peak * self.xi_min
        high = self.xi_peak * self.xi_max
        if value <= low:
            return 0.0
        if value >= high:
            return 1.0
        mu_k = math.log(value / low) / math.log(self.xi_max / self.xi_min)
        return min(max(mu_k, 0.0), 1.0)

    # -- shape parameter ----------------------------------------------------

    def shape_alpha(self, k: int, m: int) -> float:
        """alpha(k, m) = (1 + r) / (2 (1 + q)) with q the absence probability."""
        product = (
            self.r_tau(k, m, LOCAL) * self.r_tau(k, m, GLOBAL) * self.r_subband(k)
        )
        q = min(max(1.0 - product, 0.0), 1.0)
        r = 1.0 - q
        return (1.0 + r) / (2.0 * (1.0 + q))

    def alpha_frame(self) -> List[np.ndarray]:
        """Vectorized shape parameter for every coefficient of the frame."""
        log_span = math.log(self.xi_max / self.xi_min)
        out = []
        for k in range(self.n_subbands):
            r_sub = self.r_subband(k)
            product = np.full(self.xi[k].size, r_sub)
            for half_width in (self.w_local, self.w_global):
                xi_tau = self._xi_tau_array(k, half_width)
                r = np.clip(np.log(np.maximum(xi_tau, 1e-300) / self.xi_min) / log_span, 0.0, 1.0)
                product *= r
            q = np.clip(1.0 - product, 0.0, 1.0)
            alphas = (2.0 - q) / (2.0 * (1.0 + q))
            out.append(alphas)
        return out
