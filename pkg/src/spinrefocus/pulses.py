"""Base pi pulses as piecewise-constant segment lists.

A base pulse is an ordered list of constant-field segments that, at zero
offset and unit amplitude, composes to a pi rotation about +y (up to the
global spinor sign).  Built-ins are the single-segment simple pi pulse and
the three-segment composite (pi/2)(3pi/2)(pi/2); further pulses are loaded
from config text.

Config format (JSON): ``{"name": ..., "segments": [{"amplitude_rel": ...,
"phase_deg": ..., "angle_over_pi": ...}, ...]}`` with angles in units of pi
and phases in degrees, so entries stay auditable against literature tables.
The loader rejects unknown fields and validates the +y invariant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, PulseValidationError
from .su2 import Unitary2, compose, identity, segment_propagator

TWO_PI = 2.0 * math.pi

# Tolerance on the on-resonance pi_y invariant of shipped/loaded pulses.
PI_Y_TOLERANCE = 1e-10


def _wrap_phase(phi: float) -> float:
    """Reduce a phase to [0, 2*pi)."""
    r = math.fmod(phi, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    return r


@dataclass(frozen=True)
class PulseSegment:
    """One constant-field control segment.

    ``amplitude_rel`` is the field amplitude in units of the nominal drive;
    ``phase`` the field phase in radians, reduced to [0, 2*pi); and
    ``nominal_angle`` the rotation angle delivered at unit amplitude on
    resonance (the segment duration is nominal_angle / (2*pi) in units of
    the 2*pi-pulse time).
    """

    amplitude_rel: float
    phase: float
    nominal_angle: float

    def __post_init__(self):
        for field in ("amplitude_rel", "phase", "nominal_angle"):
            if not math.isfinite(getattr(self, field)):
                raise ValueError(f"{field} must be finite")
        if self.amplitude_rel < 0:
            raise ValueError(f"amplitude_rel must be >= 0, got {self.amplitude_rel}")
        if self.nominal_angle < 0:
            raise ValueError(f"nominal_angle must be >= 0, got {self.nominal_angle}")
        object.__setattr__(self, "phase", _wrap_phase(self.phase))


@dataclass(frozen=True)
class BasePulse:
    """A named composition of control segments."""

    name: str
    segments: tuple[PulseSegment, ...]

    def duration(self) -> float:
        """Total nominal duration in units of the 2*pi-pulse time (1/nu1)."""
        return sum(seg.nominal_angle for seg in self.segments) / TWO_PI


def propagate_pulse(pulse: BasePulse, epsilon) -> Unitary2:
    """Compose the segment propagators of `pulse` at fractional offset(s)."""
    eps = np.asarray(epsilon, dtype=float)
    u = identity(eps.shape)
    for seg in pulse.segments:
        u = compose(u, segment_propagator(seg.amplitude_rel, seg.phase, seg.nominal_angle, eps))
    return u


def validate_pi_y(pulse: BasePulse) -> None:
    """Check the on-resonance propagator is a pi rotation about +y.

    Accepts either spinor sign, i.e. (a, b) = (0, (0, +/-1, 0)) within
    :data:`PI_Y_TOLERANCE`.  Raises :class:`PulseValidationError` reporting
    the achieved (a, b) otherwise.
    """
    if not pulse.segments or sum(s.nominal_angle for s in pulse.segments) <= 0.0:
        raise PulseValidationError(f"pulse {pulse.name!r} has no positive total duration")
    u = propagate_pulse(pulse, 0.0)
    a = float(u.a)
    bx, by, bz = (float(v) for v in u.b)
    tol = PI_Y_TOLERANCE
    if abs(a) > tol or abs(bx) > tol or abs(bz) > tol or abs(abs(by) - 1.0) > tol:
        raise PulseValidationError(
            f"pulse {pulse.name!r} does not compose to a pi rotation about +y "
            f"on resonance: achieved a={a:.3e}, b=({bx:.3e}, {by:.6f}, {bz:.3e})"
        )


# --------------------------------------------------------------------------
# Config loading
# --------------------------------------------------------------------------

_SEGMENT_FIELDS = {"amplitude_rel", "phase_deg", "angle_over_pi"}


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    return float(value)


def load_pulse(config_text: str) -> BasePulse:
    """Parse a pulse config document and validate the loaded pulse.

    Raises :class:`ConfigError` on parse/schema problems and
    :class:`PulseValidationError` when the pulse fails the +y invariant.
    """
    try:
        doc = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"pulse config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("pulse config must be a JSON object")
    unknown = set(doc) - {"name", "segments"}
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    if "name" not in doc or "segments" not in doc:
        raise ConfigError("pulse config requires 'name' and 'segments'")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ConfigError("'name' must be a non-empty string")
    raw_segments = doc["segments"]
    if not isinstance(raw_segments, list) or not raw_segments:
        raise ConfigError("'segments' must be a non-empty list")

    segments = []
    for i, raw in enumerate(raw_segments):
        where = f"segments[{i}]"
        if not isinstance(raw, dict):
            raise ConfigError(f"{where} must be an object")
        unknown = set(raw) - _SEGMENT_FIELDS
        if unknown:
            raise ConfigError(f"{where} has unknown fields: {sorted(unknown)}")
        missing = _SEGMENT_FIELDS - set(raw)
        if missing:
            raise ConfigError(f"{where} is missing fields: {sorted(missing)}")
        amplitude = _require_number(raw["amplitude_rel"], f"{where}.amplitude_rel")
        phase_deg = _require_number(raw["phase_deg"], f"{where}.phase_deg")
        angle_over_pi = _require_number(raw["angle_over_pi"], f"{where}.angle_over_pi")
        try:
            segments.append(
                PulseSegment(amplitude, math.radians(phase_deg), angle_over_pi * math.pi)
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from exc

    pulse = BasePulse(name, tuple(segments))
    validate_pi_y(pulse)
    return pulse


def pulse_to_config(pulse: BasePulse) -> str:
    """Serialize a pulse back to config text (inverse of :func:`load_pulse`)."""
    doc = {
        "name": pulse.name,
        "segments": [
            {
                "amplitude_rel": seg.amplitude_rel,
                "phase_deg": math.degrees(seg.phase),
                "angle_over_pi": seg.nominal_angle / math.pi,
            }
            for seg in pulse.segments
        ],
    }
    return json.dumps(doc, indent=2)


# --------------------------------------------------------------------------
# Built-in pulses
# --------------------------------------------------------------------------

SIMPLE_PI_CONFIG = """\
{
  "name": "simple_pi",
  "segments": [
    {"amplitude_rel": 1.0, "phase_deg": 90.0, "angle_over_pi": 1.0}
  ]
}
"""

# The composite (pi/2)(3pi/2)(pi/2) with the middle segment 90 degrees
# ahead of the outer ones.  Written with outer phase 0 the composite's pi
# axis lands 45 degrees off +y; the constant -45 degree offset below is a
# frame choice (all segment phases shifted together) that moves the axis
# onto +y without changing a, b_z, or any fidelity.
LEVITT3_CONFIG = """\
{
  "name": "levitt3",
  "segments": [
    {"amplitude_rel": 1.0, "phase_deg": 315.0, "angle_over_pi": 0.5},
    {"amplitude_rel": 1.0, "phase_deg": 45.0, "angle_over_pi": 1.5},
    {"amplitude_rel": 1.0, "phase_deg": 315.0, "angle_over_pi": 0.5}
  ]
}
"""


def simple_pi() -> BasePulse:
    """Single-segment pi pulse about +y."""
    return load_pulse(SIMPLE_PI_CONFIG)


def levitt3() -> BasePulse:
    """Three-segment composite pi pulse (pi/2)(3pi/2)(pi/2).

    Compensates resonance offset relative to the simple pulse: its on-axis
    error |b_z| is smaller over the working offset range, which is what the
    composite is for.
    """
    return load_pulse(LEVITT3_CONFIG)


BUILTIN_PULSES = {"simple": simple_pi, "levitt3": levitt3}


# --------------------------------------------------------------------------
# Pulse transformations
# --------------------------------------------------------------------------

def bar_pulse(pulse: BasePulse) -> BasePulse:
    """Phase-reversed twin: every segment phase shifted by pi.

    The propagator of the barred pulse equals ``bar()`` of the original's
    propagator at every offset.
    """
    segments = tuple(
        PulseSegment(seg.amplitude_rel, _shift_half_turn(seg.phase), seg.nominal_angle)
        for seg in pulse.segments
    )
    return BasePulse(pulse.name + "_bar", segments)


def _shift_half_turn(phase: float) -> float:
    # Exact involution: phases live in [0, 2*pi), so one branch always
    # applies and the shift is undone bit-for-bit by the opposite branch.
    return phase - math.pi if phase >= math.pi else phase + math.pi


def scale_amplitude(pulse: BasePulse, s: float) -> BasePulse:
    """Scale every segment amplitude by `s` (durations unchanged).

    Models a systematic drive-amplitude error: the delivered flip angle
    scales with `s` while the absolute offset is unchanged.
    """
    if not (s > 0):
        raise ValueError(f"amplitude scale must be > 0, got {s}")
    segments = tuple(
        PulseSegment(seg.amplitude_rel * s, seg.phase, seg.nominal_angle)
        for seg in pulse.segments
    )
    return BasePulse(pulse.name, segments)


def scale_timesteps(pulse: BasePulse, s: float) -> BasePulse:
    """Scale every segment duration by `s` (amplitudes unchanged).

    Under-rotation by shortening every timestep at full field.
    """
    if not (s > 0):
        raise ValueError(f"timestep scale must be > 0, got {s}")
    segments = tuple(
        PulseSegment(seg.amplitude_rel, seg.phase, seg.nominal_angle * s)
        for seg in pulse.segments
    )
    return BasePulse(pulse.name, segments)
