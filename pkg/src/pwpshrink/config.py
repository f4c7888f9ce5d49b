"""Tunable constants for the enhancement pipeline.

All values live in one flat dataclass so a run can be reproduced from a
plain ``key = value`` text file.  The dB-valued presence constants are
stored in dB and converted to linear power ratios where they are used.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence, Tuple

# 24-leaf tree approximating Mel/critical-band resolution at 8 kHz:
# 62.5 Hz bands below 1 kHz, 250 Hz bands to 2 kHz, 500 Hz bands to 4 kHz.
DEFAULT_TREE: Tuple[Tuple[int, int], ...] = tuple(
    [(6, n) for n in range(16)] + [(4, n) for n in range(4, 8)] + [(3, n) for n in range(4, 8)]
)


@dataclass
class EnhanceConfig:
    """Configuration of the whole per-frame enhancement pipeline."""

    frame_len: int = 640          # analysis frame in samples, 50% overlap
    mu: float = 0.9               # mu-law companding constant
    beta: float = 0.7             # averaging constant of the a-priori SNR recursion
    xi_min_db: float = -10.0      # lower presence bound, dB
    xi_max_db: float = -5.0       # upper presence bound, dB
    xi_peak_db: float = 10.0      # cap on the running subband peak, dB
    w_local: int = 1              # half-width of the local presence window (subbands)
    w_global: int = 15            # half-width of the global presence window (subbands)
    noise_smooth: float = 0.85    # recursive smoothing of per-frame power
    noise_min_window: int = 8     # frames kept for minima tracking
    noise_bias: float = 1.5       # bias compensation on the tracked minimum
    variance_domain: str = "pwp"  # 'pwp' or 'te': statistics used for the threshold
    alpha_mode: str = "dynamic"   # 'dynamic' (presence-driven) or 'fixed'
    alpha_fixed: float = 0.5      # shape parameter when alpha_mode == 'fixed'
    xi_recursion: str = "coefficient"  # 'coefficient' or 'frame' order of the recursion
    tree_file: str = ""           # optional path to a plain-text tree spec
    tree: Tuple[Tuple[int, int], ...] = field(default=DEFAULT_TREE, repr=False)

    @property
    def xi_min(self) -> float:
        return 10.0 ** (self.xi_min_db / 10.0)

    @property
    def xi_max(self) -> float:
        return 10.0 ** (self.xi_max_db / 10.0)

    @property
    def xi_peak_cap(self) -> float:
        return 10.0 ** (self.xi_peak_db / 10.0)

    @property
    def n_subbands(self) -> int:
        return len(self.tree)

    def validate(self) -> None:
        if self.frame_len < 4 or self.frame_len % 2:
            raise ValueError(f"frame_len must be even and >= 4, got {self.frame_len}")
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError("beta must be in [0, 1)")
        if self.variance_domain not in ("pwp", "te"):
            raise ValueError(f"unknown variance_domain {self.variance_domain!r}")
        if self.alpha_mode not in ("dynamic", "fixed"):
            raise ValueError(f"unknown alpha_mode {self.alpha_mode!r}")
        if self.xi_recursion not in ("coefficient", "frame"):
            raise ValueError(f"unknown xi_recursion {self.xi_recursion!r}")
        if self.noise_min_window < 1:
            raise ValueError("noise_min_window must be >= 1")

    def to_text(self) -> str:
        """Serialize as flat ``key = value`` lines (the tree goes to its own file)."""
        lines = []
        for f in fields(self):
            if f.name == "tree":
                continue
            lines.append(f"{f.name} = {getattr(self, f.name)}")
        return "\n".join(lines) + "\n"

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())


_INT_KEYS = {"frame_len", "w_local", "w_global", "noise_min_window"}
_FLOAT_KEYS = {
    "mu", "beta", "xi_min_db", "xi_max_db", "xi_peak_db",
    "noise_smooth", "noise_bias", "alpha_fixed",
}
_STR_KEYS = {"variance_domain", "alpha_mode", "xi_recursion", "tree_file"}


def parse_config(text: str) -> EnhanceConfig:
    """Parse flat ``key = value`` text; '#' starts a comment, blanks ignored."""
    cfg = EnhanceConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in _INT_KEYS:
            setattr(cfg, key, int(value))
        elif key in _FLOAT_KEYS:
            setattr(cfg, key, float(value))
        elif key in _STR_KEYS:
            setattr(cfg, key, value)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    if cfg.tree_file:
        from .pwpt import load_tree

        cfg.tree = load_tree(cfg.tree_file).leaves
    cfg.validate()
    return cfg


def load_config(path: str | Path) -> EnhanceConfig:
    return parse_config(Path(path).read_text())
