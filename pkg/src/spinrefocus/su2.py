"""Exact SU(2) propagators and quaternion algebra for spin-1/2 control.

A 2x2 unitary with unit determinant is stored as a real quaternion
``U = a*1 + i*(bx*sx + by*sy + bz*sz)`` with ``a**2 + |b|**2 = 1``, where
``sx, sy, sz`` are the Pauli matrices.  The quaternion form avoids global
phase bookkeeping entirely: the spinor sign of a ``2k*pi`` rotation lives
in the sign of ``a``.

All operations broadcast over numpy arrays, so a whole grid of offset
values can be propagated in one call.  The complex matrix form is only
reconstructed by :func:`to_matrix` (used in tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Renormalize after composition only once the norm has drifted past this;
# keeps millions of compositions stable without masking algebra bugs.
RENORM_THRESHOLD = 1e-13


@dataclass(frozen=True, eq=False)
class Unitary2:
    """Real-quaternion representation of an SU(2) propagator.

    Attributes
    ----------
    a : ndarray
        Identity coefficient, any broadcastable shape.
    b : ndarray
        Coefficients of ``i*sigma_{x,y,z}``, shape ``a.shape + (3,)``.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        if self.b.shape[-1:] != (3,):
            raise ValueError(f"b must have trailing dimension 3, got shape {self.b.shape}")

    @property
    def shape(self):
        return self.a.shape

    def norm_squared(self) -> np.ndarray:
        return self.a**2 + (self.b**2).sum(axis=-1)


def identity(shape=()) -> Unitary2:
    """Identity propagator, optionally broadcast to a grid shape."""
    return Unitary2(np.ones(shape), np.zeros(shape + (3,)))


def _renormalized(a: np.ndarray, b: np.ndarray) -> Unitary2:
    n2 = a**2 + (b**2).sum(axis=-1)
    if np.any(np.abs(n2 - 1.0) > RENORM_THRESHOLD):
        scale = 1.0 / np.sqrt(n2)
        a = a * scale
        b = b * scale[..., np.newaxis]
    return Unitary2(a, b)


def compose(first: Unitary2, second: Unitary2) -> Unitary2:
    """Propagator of applying `first`, then `second` (matrix product second @ first).

    Both inputs must be unit norm; the result is renormalized whenever
    roundoff drift exceeds :data:`RENORM_THRESHOLD`.
    """
    a1, b1 = first.a, first.b
    a2, b2 = second.a, second.b
    a = a2 * a1 - (b2 * b1).sum(axis=-1)
    b = a2[..., np.newaxis] * b1 + a1[..., np.newaxis] * b2 - np.cross(b2, b1)
    return _renormalized(a, b)


def bar(u: Unitary2) -> Unitary2:
    """Phase-reversed propagator (a, -bx, -by, +bz); equals sz @ U @ sz."""
    return Unitary2(u.a, u.b * np.array([-1.0, -1.0, 1.0]))


def fidelity_identity(u: Unitary2) -> np.ndarray:
    """Fidelity with the identity operator, |Tr U|**2 / 4 = a**2.

    Insensitive to the global spinor sign: both +1 and -1 give fidelity 1.
    Capped at 1, the exact bound a unit quaternion can only breach by
    roundoff.
    """
    return np.minimum(u.a**2, 1.0)


@dataclass(frozen=True, eq=False)
class ErrorCoeffs:
    """Deviation of a propagator from +/-identity, componentwise.

    ``delta_1`` is the distance of ``a`` from the nearest of +1/-1;
    ``delta_x/y/z`` are the magnitudes of the corresponding b components.
    All components are zero iff the propagator is exactly +/-1.
    """

    delta_1: np.ndarray
    delta_x: np.ndarray
    delta_y: np.ndarray
    delta_z: np.ndarray

    def component(self, name: str) -> np.ndarray:
        if name not in ("delta_1", "delta_x", "delta_y", "delta_z"):
            raise ValueError(f"unknown error component {name!r}")
        return getattr(self, name)


ERROR_COMPONENTS = ("delta_1", "delta_x", "delta_y", "delta_z")


def error_coeffs(u: Unitary2) -> ErrorCoeffs:
    """Measured error coefficients of a near-identity propagator."""
    delta_1 = np.minimum(np.abs(u.a - 1.0), np.abs(u.a + 1.0))
    babs = np.abs(u.b)
    return ErrorCoeffs(delta_1, babs[..., 0], babs[..., 1], babs[..., 2])


def segment_propagator(
    amplitude_rel: float,
    phase: float,
    nominal_angle: float,
    epsilon,
) -> Unitary2:
    """Closed-form propagator of one constant-field control segment.

    The segment drives the spin with relative in-plane field amplitude
    ``s = amplitude_rel`` at azimuthal angle ``phase``, for the duration
    that would produce a rotation of ``nominal_angle`` at unit amplitude
    on resonance.  A fractional offset ``epsilon`` adds a z component, so
    the rotation vector is ``nominal_angle * (s*cos(phase), s*sin(phase),
    epsilon)`` and the effective angle is ``nominal_angle * sqrt(s**2 +
    epsilon**2)``.  Sign convention: ``U = exp(+i * (angle/2) * n.sigma)``.

    Parameters
    ----------
    amplitude_rel : float
        Field amplitude relative to nominal, >= 0.
    phase : float
        Field phase in radians.
    nominal_angle : float
        Rotation angle at unit amplitude on resonance, in radians, >= 0.
    epsilon : float or ndarray
        Fractional resonance offset(s); broadcasts.

    Returns
    -------
    Unitary2
        Propagator with the shape of ``epsilon``.
    """
    if not (math.isfinite(amplitude_rel) and math.isfinite(phase) and math.isfinite(nominal_angle)):
        raise ValueError("segment parameters must be finite")
    if amplitude_rel < 0:
        raise ValueError(f"amplitude_rel must be >= 0, got {amplitude_rel}")
    if nominal_angle < 0:
        raise ValueError(f"nominal_angle must be >= 0, got {nominal_angle}")
    eps = np.asarray(epsilon, dtype=float)
    if not np.all(np.isfinite(eps)):
        raise ValueError("epsilon must be finite")

    hyp = np.hypot(amplitude_rel, eps)
    half = 0.5 * nominal_angle * hyp
    # sin(half)/hyp is finite as hyp -> 0; the degenerate s = eps = 0
    # segment is the identity (no field, so the duration is irrelevant).
    safe = np.where(hyp > 0.0, hyp, 1.0)
    k = np.where(hyp > 0.0, np.sin(half) / safe, 0.0)
    vec = np.stack(
        [
            np.broadcast_to(amplitude_rel * math.cos(phase), eps.shape),
            np.broadcast_to(amplitude_rel * math.sin(phase), eps.shape),
            eps,
        ],
        axis=-1,
    )
    return Unitary2(np.cos(half), k[..., np.newaxis] * vec)


def integrate_oracle(segments, epsilon: float, steps_per_segment: int) -> Unitary2:
    """Brute-force product integration of the piecewise-constant generator.

    Splits every segment into ``steps_per_segment`` slices and multiplies
    truncated-Taylor step propagators, renormalizing once per segment.
    Converges to the :func:`segment_propagator` composition as the step
    count grows; it never evaluates the closed-form axis-angle solution,
    which makes it an independent cross-check (used only in tests).

    ``segments`` is an iterable of ``(amplitude_rel, phase, nominal_angle)``
    triples or of objects carrying those attributes.
    """
    if steps_per_segment < 1:
        raise ValueError(f"steps_per_segment must be >= 1, got {steps_per_segment}")
    eps = float(epsilon)
    a, bx, by, bz = 1.0, 0.0, 0.0, 0.0
    for seg in segments:
        if hasattr(seg, "amplitude_rel"):
            s, phi, theta = seg.amplitude_rel, seg.phase, seg.nominal_angle
        else:
            s, phi, theta = seg
        n = int(steps_per_segment)
        # Half-angle step vector of the constant generator.
        h = 0.5 * theta / n
        wx0, wy0, wz0 = h * s * math.cos(phi), h * s * math.sin(phi), h * eps
        w2 = wx0 * wx0 + wy0 * wy0 + wz0 * wz0
        sa_ = 1.0 - 0.5 * w2
        f = 1.0 - w2 / 6.0
        wx, wy, wz = f * wx0, f * wy0, f * wz0
        for _ in range(n):
            a, bx, by, bz = (
                sa_ * a - wx * bx - wy * by - wz * bz,
                sa_ * bx + a * wx - (wy * bz - wz * by),
                sa_ * by + a * wy - (wz * bx - wx * bz),
                sa_ * bz + a * wz - (wx * by - wy * bx),
            )
        norm = math.sqrt(a * a + bx * bx + by * by + bz * bz)
        a, bx, by, bz = a / norm, bx / norm, by / norm, bz / norm
    return Unitary2(np.asarray(a), np.asarray([bx, by, bz]))


def to_matrix(u: Unitary2) -> np.ndarray:
    """Reconstruct the complex 2x2 matrix a*1 + i*b.sigma (tests only)."""
    a = np.asarray(u.a)
    bx, by, bz = np.moveaxis(u.b, -1, 0)
    m = np.empty(a.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = a + 1j * bz
    m[..., 0, 1] = by + 1j * bx
    m[..., 1, 0] = -by + 1j * bx
    m[..., 1, 1] = a - 1j * bz
    return m
