"""Error-compensating refocussing sequences for an off-resonant spin-1/2.

Builds pulse sequences from one base pi pulse and its phase-reversed twin
that approximate the identity operator under a static resonance offset
comparable to the drive amplitude, propagates them exactly as SU(2)
quaternion products, and sweeps fidelity against offset, drive amplitude,
and timestep scaling.
"""

from .analysis import (
    SweepResult,
    SweepSpec,
    delay_propagator,
    epsilon_max,
    grid,
    offset_sweep,
    propagate_sequence,
    robustness_map,
    timestep_map,
)
from .exceptions import (
    ComplementNotFoundError,
    ConfigError,
    OrderFitError,
    PulseValidationError,
    SequencePreconditionError,
    UnknownSequenceError,
)
from .pulses import (
    BUILTIN_PULSES,
    BasePulse,
    PulseSegment,
    bar_pulse,
    levitt3,
    load_pulse,
    propagate_pulse,
    pulse_to_config,
    scale_amplitude,
    scale_timesteps,
    simple_pi,
    validate_pi_y,
)
from .sequences import (
    CANONICAL_LABELS,
    OrderEstimate,
    SequenceExpr,
    antisymmetrize,
    bar_seq,
    build_canonical,
    combine,
    concat,
    estimate_order,
    find_complement,
    from_string,
    resolve_sequence,
    sa,
    sequence_propagator,
    to_string,
    winding_sign,
)
from .su2 import (
    ErrorCoeffs,
    Unitary2,
    bar,
    compose,
    error_coeffs,
    fidelity_identity,
    identity,
    integrate_oracle,
    segment_propagator,
    to_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_PULSES",
    "BasePulse",
    "CANONICAL_LABELS",
    "ComplementNotFoundError",
    "ConfigError",
    "ErrorCoeffs",
    "OrderEstimate",
    "OrderFitError",
    "PulseSegment",
    "PulseValidationError",
    "SequenceExpr",
    "SequencePreconditionError",
    "SweepResult",
    "SweepSpec",
    "Unitary2",
    "UnknownSequenceError",
    "antisymmetrize",
    "bar",
    "bar_pulse",
    "bar_seq",
    "build_canonical",
    "combine",
    "compose",
    "concat",
    "delay_propagator",
    "epsilon_max",
    "error_coeffs",
    "estimate_order",
    "fidelity_identity",
    "find_complement",
    "from_string",
    "grid",
    "identity",
    "integrate_oracle",
    "levitt3",
    "load_pulse",
    "offset_sweep",
    "propagate_pulse",
    "propagate_sequence",
    "pulse_to_config",
    "resolve_sequence",
    "robustness_map",
    "sa",
    "scale_amplitude",
    "scale_timesteps",
    "segment_propagator",
    "sequence_propagator",
    "simple_pi",
    "timestep_map",
    "to_matrix",
    "to_string",
    "validate_pi_y",
    "winding_sign",
]
