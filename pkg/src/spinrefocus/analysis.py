"""Parameter sweeps: offset curves, windowed mode, robustness maps, band edges.

Every grid point is an independent pure computation; sweeps vectorize the
offset axis through the quaternion algebra, so a full curve costs a few
hundred array compositions.  Emitted row order is the deterministic grid
order (scale outer, offset inner for maps) regardless of how the points
are evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pulses import BasePulse, propagate_pulse, scale_amplitude, scale_timesteps
from .sequences import SequenceExpr, resolve_sequence
from .su2 import Unitary2, bar, compose, error_coeffs, fidelity_identity, identity

# Default grid resolutions: band-edge scans, curves, and map scale axes.
EPS_STEP_BAND = 1e-3
EPS_STEP_CURVE = 5e-3
SCALE_STEP_MAP = 1e-2
BAND_REFINE_TOL = 1e-4
BAND_SCAN_MAX = 1.5


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid with deterministic construction."""
    if step <= 0:
        raise ValueError(f"grid step must be > 0, got {step}")
    if stop < start:
        raise ValueError(f"grid stop {stop} below start {start}")
    n = int(round((stop - start) / step)) + 1
    return start + step * np.arange(n)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep request: sequence, base pulse, offset grid, and knobs.

    ``window_delay`` is the free-evolution delay inserted before every
    base pulse, in units of the 2*pi-pulse time 1/nu1 (0 = windowless).
    Amplitude/timestep scaling applies to the base pulse once up front;
    delays are absolute time and are never scaled.
    """

    sequence: str | SequenceExpr
    pulse: BasePulse
    eps_min: float = 0.0
    eps_max: float = 1.0
    eps_step: float = EPS_STEP_CURVE
    window_delay: float = 0.0
    amplitude_scale: float = 1.0
    timestep_scale: float = 1.0

    def __post_init__(self):
        if self.eps_step <= 0:
            raise ValueError(f"eps_step must be > 0, got {self.eps_step}")
        if self.eps_max < self.eps_min:
            raise ValueError("eps_max must be >= eps_min")
        if self.window_delay < 0:
            raise ValueError(f"window_delay must be >= 0, got {self.window_delay}")
        if not (self.amplitude_scale > 0 and self.timestep_scale > 0):
            raise ValueError("scale factors must be > 0")

    def epsilon_grid(self) -> np.ndarray:
        return grid(self.eps_min, self.eps_max, self.eps_step)

    def scaled_pulse(self) -> BasePulse:
        pulse = self.pulse
        if self.amplitude_scale != 1.0:
            pulse = scale_amplitude(pulse, self.amplitude_scale)
        if self.timestep_scale != 1.0:
            pulse = scale_timesteps(pulse, self.timestep_scale)
        return pulse


@dataclass(frozen=True)
class SweepResult:
    """Long-format sweep rows; all arrays share one length.

    ``fidelity + delta_x**2 + delta_y**2 + delta_z**2 = 1`` up to the
    quaternion norm tolerance, since fidelity is the squared identity
    coefficient.
    """

    epsilon: np.ndarray
    scale: np.ndarray
    fidelity: np.ndarray
    delta_1: np.ndarray
    delta_x: np.ndarray
    delta_y: np.ndarray
    delta_z: np.ndarray
    scale_kind: str = "amplitude"

    def __len__(self) -> int:
        return len(self.epsilon)


def delay_propagator(epsilon, delay: float) -> Unitary2:
    """Free evolution under the offset for `delay` units of 1/nu1.

    Pure z rotation with half-angle pi * epsilon * delay: one unit of
    delay at epsilon = 1 is a full 2*pi rotation, so it returns minus the
    identity (the spinor sign).
    """
    if not (math.isfinite(delay) and delay >= 0):
        raise ValueError(f"delay must be finite and >= 0, got {delay}")
    eps = np.asarray(epsilon, dtype=float)
    if not np.all(np.isfinite(eps)):
        raise ValueError("epsilon must be finite")
    half = math.pi * delay * eps
    b = np.zeros(eps.shape + (3,))
    b[..., 2] = np.sin(half)
    return Unitary2(np.cos(half), b)


def _token_propagator(
    expr: SequenceExpr, pulse: BasePulse, epsilon, window_delay: float
) -> Unitary2:
    eps = np.asarray(epsilon, dtype=float)
    u_p = propagate_pulse(pulse, eps)
    u_q = bar(u_p)
    u_delay = delay_propagator(eps, window_delay) if window_delay > 0 else None
    u = identity(eps.shape)
    for barred in expr.tokens:
        if u_delay is not None:
            u = compose(u, u_delay)
        u = compose(u, u_q if barred else u_p)
    return u


def propagate_sequence(spec: SweepSpec, epsilon) -> Unitary2:
    """Propagator of the spec's sequence at offset(s) `epsilon`.

    Token order, with the window delay (if any) preceding every pulse.
    """
    expr = resolve_sequence(spec.sequence)
    return _token_propagator(expr, spec.scaled_pulse(), epsilon, spec.window_delay)


def _result_from_propagator(u: Unitary2, eps: np.ndarray, scale, kind: str) -> SweepResult:
    ec = error_coeffs(u)
    return SweepResult(
        epsilon=eps,
        scale=np.broadcast_to(np.asarray(scale, dtype=float), eps.shape).copy(),
        fidelity=fidelity_identity(u),
        delta_1=ec.delta_1,
        delta_x=ec.delta_x,
        delta_y=ec.delta_y,
        delta_z=ec.delta_z,
        scale_kind=kind,
    )


def offset_sweep(spec: SweepSpec) -> SweepResult:
    """Fidelity and error coefficients over the spec's offset grid."""
    eps = spec.epsilon_grid()
    u = propagate_sequence(spec, eps)
    return _result_from_propagator(u, eps, spec.amplitude_scale, "amplitude")


def epsilon_max(
    sequence,
    pulse: BasePulse,
    f_threshold: float,
    window_delay: float = 0.0,
    amplitude_scale: float = 1.0,
    timestep_scale: float = 1.0,
    eps_step: float = EPS_STEP_BAND,
    scan_max: float = BAND_SCAN_MAX,
    refine_tol: float = BAND_REFINE_TOL,
) -> float:
    """Largest offset such that fidelity stays above threshold from 0 up.

    The band is contiguous from epsilon = 0: the scan stops at the first
    grid point below threshold and bisects the last grid cell down to
    `refine_tol`, so oscillatory fidelity curves report the edge of the
    guaranteed band, not the outermost crossing.  Returns 0 when already
    the first nonzero grid point fails, and `scan_max` when no grid point
    fails.
    """
    if not (0.0 < f_threshold < 1.0):
        raise ValueError(f"f_threshold must be in (0, 1), got {f_threshold}")
    spec = SweepSpec(
        sequence,
        pulse,
        eps_min=0.0,
        eps_max=scan_max,
        eps_step=eps_step,
        window_delay=window_delay,
        amplitude_scale=amplitude_scale,
        timestep_scale=timestep_scale,
    )
    eps = spec.epsilon_grid()
    f = fidelity_identity(propagate_sequence(spec, eps))
    below = np.nonzero(f < f_threshold)[0]
    if len(below) == 0:
        return float(eps[-1])
    first_bad = int(below[0])
    if first_bad <= 1:
        return 0.0
    lo, hi = float(eps[first_bad - 1]), float(eps[first_bad])
    while hi - lo > refine_tol:
        mid = 0.5 * (lo + hi)
        if float(fidelity_identity(propagate_sequence(spec, mid))) >= f_threshold:
            lo = mid
        else:
            hi = mid
    return lo


def _scale_map(
    sequence,
    pulse: BasePulse,
    eps_grid: np.ndarray,
    scale_grid: np.ndarray,
    kind: str,
    window_delay: float = 0.0,
) -> SweepResult:
    expr = resolve_sequence(sequence)
    eps_grid = np.asarray(eps_grid, dtype=float)
    scale_grid = np.asarray(scale_grid, dtype=float)
    if eps_grid.size == 0 or scale_grid.size == 0:
        raise ValueError("map grids must be non-empty")
    scaler = scale_amplitude if kind == "amplitude" else scale_timesteps
    parts = []
    for s in scale_grid:
        u = _token_propagator(expr, scaler(pulse, float(s)), eps_grid, window_delay)
        parts.append(_result_from_propagator(u, eps_grid, float(s), kind))
    return SweepResult(
        epsilon=np.concatenate([p.epsilon for p in parts]),
        scale=np.concatenate([p.scale for p in parts]),
        fidelity=np.concatenate([p.fidelity for p in parts]),
        delta_1=np.concatenate([p.delta_1 for p in parts]),
        delta_x=np.concatenate([p.delta_x for p in parts]),
        delta_y=np.concatenate([p.delta_y for p in parts]),
        delta_z=np.concatenate([p.delta_z for p in parts]),
        scale_kind=kind,
    )


def robustness_map(sequence, pulse: BasePulse, eps_grid, amplitude_grid) -> SweepResult:
    """Fidelity over (offset, amplitude scale); rows scale-outer, offset-inner."""
    return _scale_map(sequence, pulse, eps_grid, amplitude_grid, "amplitude")


def timestep_map(sequence, pulse: BasePulse, eps_grid, timestep_grid) -> SweepResult:
    """Fidelity over (offset, timestep scale); rows scale-outer, offset-inner."""
    return _scale_map(sequence, pulse, eps_grid, timestep_grid, "timestep")
