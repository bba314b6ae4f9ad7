"""Shared helpers for the test suite."""

import math

import numpy as np

from spinrefocus.pulses import BasePulse, bar_pulse
from spinrefocus.sequences import SequenceExpr
from spinrefocus.su2 import Unitary2


def random_unitaries(rng, n: int) -> Unitary2:
    """n random unit quaternions (Haar-ish via normalized gaussians)."""
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    return Unitary2(q[:, 0], q[:, 1:])


def flat_segments(expr: SequenceExpr, pulse: BasePulse):
    """Expand a sequence into one flat segment list (barred tokens inlined)."""
    barred = bar_pulse(pulse)
    segments = []
    for token in expr.tokens:
        segments.extend((barred if token else pulse).segments)
    return segments


def oracle_steps(segments, epsilon: float, tol: float) -> int:
    """Steps per segment so the product-integration error bound is < tol.

    The truncated-Taylor step leaves a per-segment angle error below
    Theta**5 / (960 n**4) with Theta the segment's effective rotation
    angle; summing over segments and inverting gives the step count.
    """
    total = 0.0
    for seg in segments:
        theta_eff = seg.nominal_angle * math.hypot(seg.amplitude_rel, epsilon)
        total += theta_eff**5
    if total == 0.0:
        return 50
    n = (total / (960.0 * tol)) ** 0.25
    return max(50, math.ceil(1.4 * n))
