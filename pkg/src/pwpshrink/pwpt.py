"""Perceptual wavelet packet analysis/synthesis.

A 6-level db10 wavelet packet decomposition pruned to a 24-leaf tree whose
band widths coarsen with frequency (62.5 Hz below 1 kHz, 250 Hz to 2 kHz,
500 Hz to 4 kHz at fs = 8 kHz).  Every split uses periodic (circular)
extension, so the transform is exactly orthonormal: critical sampling,
Parseval energy preservation, and perfect reconstruction all hold to
floating-point accuracy.

Leaves are indexed in natural frequency order; internally each leaf is
mapped to its filter-bank (Paley) node via the Gray code, which accounts
for the spectral reversal of decimated highpass branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from .config import DEFAULT_TREE

# Daubechies-10 decomposition lowpass, computed by spectral factorization of
# the degree-9 half-band polynomial at 60-digit precision and rounded to
# float64.  sum = sqrt(2), unit energy, orthogonal to its even shifts.
_DB10_LOWPASS = np.array([
    -1.3264202894521245e-05,
    9.3588670320069591e-05,
    -0.00011646685512928545,
    -0.00068585669495971163,
    0.0019924052951850561,
    0.0013953517470529012,
    -0.010733175483330575,
    0.0036065535669561697,
    0.033212674059341002,
    -0.029457536821875813,
    -0.071394147166397087,
    0.093057364603572351,
    0.12736934033579326,
    -0.19594627437737704,
    -0.24984642432731538,
    0.28117234366057746,
    0.68845903945360357,
    0.52720118893172559,
    0.18817680007769149,
    0.026670057900555554,
])


@dataclass(frozen=True)
class WaveletFilters:
    """Two-channel orthonormal analysis filters plus their time-reversed pair."""

    lowpass: np.ndarray
    highpass: np.ndarray

    @property
    def rec_lowpass(self) -> np.ndarray:
        return self.lowpass[::-1]

    @property
    def rec_highpass(self) -> np.ndarray:
        return self.highpass[::-1]


def db10_filters() -> WaveletFilters:
    """The 20-tap Daubechies-10 decomposition pair (quadrature mirror highpass)."""
    lo = _DB10_LOWPASS.copy()
    n = np.arange(lo.size)
    hi = (-1.0) ** n * lo[::-1]
    return WaveletFilters(lowpass=lo, highpass=hi)


class PerceptualTree:
    """Ordered list of (depth, node) leaves tiling [0, fs/2) without overlap.

    `node` counts bands of width fs / 2**(depth+1) from DC upward, i.e. the
    leaves are given in natural frequency order.
    """

    def __init__(self, leaves: Sequence[Tuple[int, int]]):
        self.leaves: Tuple[Tuple[int, int], ...] = tuple((int(d), int(n)) for d, n in leaves)
        self.validate()
        self.max_depth = max(d for d, _ in self.leaves)
        # Paley (filter-bank) index of each leaf: Gray-encode the frequency index.
        self._paley = [(d, n ^ (n >> 1)) for d, n in self.leaves]
        ancestors = set()
        for d, p in self._paley:
            for j in range(1, d + 1):
                ancestors.add((d - j, p >> j))
        self._schedule = sorted(ancestors)  # internal nodes, shallow to deep

    def validate(self) -> None:
        if len(self.leaves) != 24:
            raise ValueError(f"expected 24 leaves, got {len(self.leaves)}")
        spans = []
        for d, n in self.leaves:
            if not 1 <= d <= 6:
                raise ValueError(f"leaf depth {d} outside [1, 6]")
            if not 0 <= n < 2**d:
                raise ValueError(f"leaf node {n} invalid at depth {d}")
            spans.append((n / 2**d, (n + 1) / 2**d))
        spans.sort()
        if spans[0][0] != 0.0 or spans[-1][1] != 1.0:
            raise ValueError("leaves do not span the full band")
        for (_, hi), (lo, _) in zip(spans, spans[1:]):
            if hi != lo:
                raise ValueError("leaves overlap or leave a gap")
        centers = [(n + 0.5) / 2**d for d, n in self.leaves]
        widths = [1.0 / 2**d for d, _ in self.leaves]
        order = np.argsort(centers)
        sorted_widths = [widths[i] for i in order]
        if any(b < a for a, b in zip(sorted_widths, sorted_widths[1:])):
            raise ValueError("bandwidth must be non-decreasing with center frequency")

    def band_hz(self, k: int, fs: float) -> Tuple[float, float]:
        d, n = self.leaves[k]
        width = fs / 2 ** (d + 1)
        return n * width, (n + 1) * width

    def __eq__(self, other) -> bool:
        return isinstance(other, PerceptualTree) and self.leaves == other.leaves

    def __len__(self) -> int:
        return len(self.leaves)


def build_tree() -> PerceptualTree:
    """The default 24-leaf perceptually motivated tree."""
    return PerceptualTree(DEFAULT_TREE)


def parse_tree_text(text: str) -> PerceptualTree:
    """Parse one 'depth node' pair per line; '#' starts a comment."""
    leaves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"tree line {lineno}: expected 'depth node', got {raw!r}")
        leaves.append((int(parts[0]), int(parts[1])))
    return PerceptualTree(leaves)


def load_tree(path: str | Path) -> PerceptualTree:
    return parse_tree_text(Path(path).read_text())


def tree_to_text(tree: PerceptualTree) -> str:
    return "\n".join(f"{d} {n}" for d, n in tree.leaves) + "\n"


@dataclass
class SubbandSet:
    """Per-frame subband coefficient vectors in leaf order."""

    coeffs: List[np.ndarray]
    tree: PerceptualTree
    frame_len: int


@lru_cache(maxsize=None)
def _gather_index(n: int, taps: int) -> np.ndarray:
    """(n//2, taps) circular gather indices for one analysis split."""
    m = np.arange(n // 2)[:, None]
    k = np.arange(taps)[None, :]
    return (2 * m + k) % n


def _split(x: np.ndarray, filters: WaveletFilters) -> Tuple[np.ndarray, np.ndarray]:
    idx = _gather_index(x.size, filters.lowpass.size)
    gathered = x[idx]
    return gathered @ filters.lowpass, gathered @ filters.highpass


def _merge(lo: np.ndarray, hi: np.ndarray, filters: WaveletFilters) -> np.ndarray:
    n = 2 * lo.size
    idx = _gather_index(n, filters.lowpass.size)
    contrib = lo[:, None] * filters.lowpass[None, :] + hi[:, None] * filters.highpass[None, :]
    return np.bincount(idx.ravel(), weights=contrib.ravel(), minlength=n)


def analyze(frame: np.ndarray, tree: PerceptualTree, filters: WaveletFilters) -> SubbandSet:
    """Decompose one frame into the tree's subbands (circular filter bank)."""
    frame = np.asarray(frame, dtype=np.float64)
    block = 2**tree.max_depth
    if frame.size % block:
        raise ValueError(f"frame length {frame.size} not divisible by {block}")
    nodes = {(0, 0): frame}
    for depth, p in tree._schedule:
        lo, hi = _split(nodes[(depth, p)], filters)
        nodes[(depth + 1, 2 * p)] = lo
        nodes[(depth + 1, 2 * p + 1)] = hi
    coeffs = [nodes[key] for key in tree._paley]
    return SubbandSet(coeffs=coeffs, tree=tree, frame_len=frame.size)


def synthesize(sb: SubbandSet, filters: WaveletFilters) -> np.ndarray:
    """Exact inverse of analyze."""
    tree = sb.tree
    if len(sb.coeffs) != len(tree.leaves):
        raise ValueError("coefficient count does not match tree")
    nodes = {}
    for (depth, p), c in zip(tree._paley, sb.coeffs):
        c = np.asarray(c, dtype=np.float64)
        expected = sb.frame_len // 2**depth
        if c.size != expected:
            raise ValueError(
                f"subband at depth {depth} has {c.size} coefficients, expected {expected}"
            )
        nodes[(depth, p)] = c
    for depth, p in reversed(tree._schedule):
        lo = nodes.pop((depth + 1, 2 * p))
        hi = nodes.pop((depth + 1, 2 * p + 1))
        nodes[(depth, p)] = _merge(lo, hi, filters)
    return nodes[(0, 0)]
