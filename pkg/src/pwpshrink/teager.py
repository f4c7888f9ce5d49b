"""Discrete Teager energy operator applied per subband."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .pwpt import SubbandSet


@dataclass
class TeCoeffs:
    """Teager-energy values aligned with the source subband coefficients."""

    values: List[np.ndarray]


def te_operator(sb: SubbandSet) -> TeCoeffs:
    """x[m]**2 - x[m+1]*x[m-1] per subband; plain squares at the endpoints.

    The endpoint rule keeps the output non-negative at the edges and the
    length equal to the input length, which the per-subband statistics need.
    """
    out = []
    for w in sb.coeffs:
        w = np.asarray(w, dtype=np.float64)
        t = w * w
        if w.size >= 3:
            t[1:-1] = w[1:-1] ** 2 - w[2:] * w[:-2]
        out.append(t)
    return TeCoeffs(values=out)
