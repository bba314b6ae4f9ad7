"""Construction algebra for refocussing sequences over one base pulse.

A sequence is an ordered word over two symbols: the base pulse P and its
phase-reversed twin Q (= P with every segment phase shifted by pi).  The
text form uses exactly that alphabet, e.g. ``"PPQQQQPP"`` for the 8-pulse
sequence.  Construction proceeds by concatenation, tokenwise phase
reversal, antisymmetrization ``s -> s sbar``, the symmetric-antisymmetric
arrangement ``s -> s sbar sbar s``, and the winding-paired combination
``(s1, s2) -> s1 sbar1 s2 sbar2`` that cancels the leading z error between
a 4k*pi word and a (4k+2)*pi word through the spinor sign.

The canonical family '2'..'256' doubles in length at every step; its
token strings are fixed, so :func:`build_canonical` is deterministic.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ComplementNotFoundError,
    OrderFitError,
    SequencePreconditionError,
    UnknownSequenceError,
)
from .pulses import BasePulse, propagate_pulse, simple_pi
from .su2 import Unitary2, bar, compose, error_coeffs, identity

# Default power-law fit window for error-order estimation.
FIT_EPS_MIN = 1e-3
FIT_EPS_MAX = 1e-2
FIT_POINTS = 12
FIT_RESIDUAL_THRESHOLD = 1e-2

# Components whose smallest sampled magnitude dips below this are flagged
# "vanishing": double precision cannot resolve them against the roundoff
# floor of long quaternion products (~1e-15), so no exponent is reported.
VANISH_FLOOR = 1e-14

# Window used for the order-match verification inside combine() and
# find_complement().  The default fit window starts at 1e-3 where the
# eps^5/eps^7 components of the longer inputs sit at the roundoff floor;
# one decade higher they are clean power laws and matching is unambiguous.
MATCH_EPS_MIN = 1e-2
MATCH_EPS_MAX = 1e-1

CANONICAL_LABELS = ("2", "4", "8", "16", "32", "64", "128", "256")


@dataclass(frozen=True)
class SequenceExpr:
    """An ordered word over {P, Q}; True marks a barred (Q) token."""

    tokens: tuple[bool, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.tokens) < 1:
            raise ValueError("a sequence needs at least one token")

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        return to_string(self)


def from_string(text: str, name: str = "") -> SequenceExpr:
    """Parse a token string over the alphabet {P, Q} (Q = barred P)."""
    tokens = []
    for ch in text:
        if ch == "P":
            tokens.append(False)
        elif ch == "Q":
            tokens.append(True)
        else:
            raise ValueError(f"invalid sequence character {ch!r} (expected 'P' or 'Q')")
    if not tokens:
        raise ValueError("empty sequence string")
    return SequenceExpr(tuple(tokens), name or text)


def to_string(expr: SequenceExpr) -> str:
    return "".join("Q" if barred else "P" for barred in expr.tokens)


def concat(s1: SequenceExpr, s2: SequenceExpr, name: str = "") -> SequenceExpr:
    return SequenceExpr(s1.tokens + s2.tokens, name)


def bar_seq(s: SequenceExpr, name: str = "") -> SequenceExpr:
    """Flip the barred flag on every token (order preserved).

    The propagator of the barred word equals bar() of the original's at
    every offset, because tokenwise phase reversal is a homomorphism.
    """
    return SequenceExpr(tuple(not t for t in s.tokens), name or (s.name + "_bar" if s.name else ""))


def antisymmetrize(s: SequenceExpr, name: str = "") -> SequenceExpr:
    """The word s sbar: suppresses transverse error by a factor of the z error."""
    return concat(s, bar_seq(s), name)


def sa(s: SequenceExpr, name: str = "") -> SequenceExpr:
    """The symmetric-antisymmetric word s sbar sbar s.

    Suppresses transverse error by one more z-error factor than
    :func:`antisymmetrize`, at twice the length.
    """
    sb = bar_seq(s)
    return concat(concat(s, sb), concat(sb, s), name)


def flip_token(s: SequenceExpr, index: int, name: str = "") -> SequenceExpr:
    tokens = list(s.tokens)
    tokens[index] = not tokens[index]
    return SequenceExpr(tuple(tokens), name)


def winding_sign(s: SequenceExpr) -> int:
    """Sign of the identity coefficient at zero offset with exact pulses.

    With ideal tokens (pure pi rotations about +/-y) a word of even length
    N composes to (-1)**(N/2 + #barred) times the identity: each token is a
    pure imaginary unit quaternion, so the product's sign is fixed by the
    token count and the number of reversed tokens.  Odd-length words are
    pi rotations, not identities.

    Returns +1 or -1; raises for odd length.
    """
    n = len(s.tokens)
    if n % 2:
        raise SequencePreconditionError(f"winding is defined for even-length words, got {n}")
    nbar = sum(s.tokens)
    return -1 if (n // 2 + nbar) % 2 else 1


def sequence_propagator(expr: SequenceExpr, base: BasePulse, epsilon) -> Unitary2:
    """Propagator of the word at offset(s) `epsilon` (windowless, unscaled)."""
    eps = np.asarray(epsilon, dtype=float)
    u_p = propagate_pulse(base, eps)
    u_q = bar(u_p)
    u = identity(eps.shape)
    for barred in expr.tokens:
        u = compose(u, u_q if barred else u_p)
    return u


# --------------------------------------------------------------------------
# Error-order estimation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderEstimate:
    """Fitted leading power law ``delta ~ coefficient * eps**exponent``.

    ``vanishing`` marks components that underflow double precision inside
    the fit window; their exponent and coefficient are meaningless and set
    to NaN/0.
    """

    component: str
    exponent: float
    coefficient: float
    residual: float
    vanishing: bool
    window: tuple[float, float]


def estimate_order(
    s: SequenceExpr,
    base: BasePulse,
    component: str,
    eps_min: float = FIT_EPS_MIN,
    eps_max: float = FIT_EPS_MAX,
    points: int = FIT_POINTS,
    residual_threshold: float = FIT_RESIDUAL_THRESHOLD,
) -> OrderEstimate:
    """Fit the leading error-order exponent of one delta component.

    Samples `points` log-spaced offsets in [eps_min, eps_max], fits
    log10|delta| against log10(eps), and returns exponent (slope) and
    coefficient (10**intercept).  Raises :class:`OrderFitError` when the
    RMS log-residual exceeds `residual_threshold`, which signals
    non-power-law behaviour in the window.
    """
    grid = np.logspace(math.log10(eps_min), math.log10(eps_max), points)
    u = sequence_propagator(s, base, grid)
    deltas = error_coeffs(u).component(component)
    vanished = OrderEstimate(component, math.nan, 0.0, math.nan, True, (eps_min, eps_max))
    if deltas.max() < VANISH_FLOOR:
        return vanished
    logx = np.log10(grid)
    logy = np.log10(deltas)
    slope, intercept = np.polyfit(logx, logy, 1)
    residual = float(np.sqrt(np.mean((logy - (slope * logx + intercept)) ** 2)))
    if residual > residual_threshold:
        # A bad fit whose lower end dips under the floor is underflow, not
        # physics: the small-offset points are roundoff, so no exponent is
        # reported.  A bad fit on well-resolved data is a real error.
        if deltas.min() < VANISH_FLOOR:
            return vanished
        raise OrderFitError(
            f"{component} of {s.name or to_string(s)} is not a clean power law over "
            f"[{eps_min:g}, {eps_max:g}]: RMS log residual {residual:.3g}"
        )
    return OrderEstimate(
        component, float(slope), float(10.0**intercept), residual, False, (eps_min, eps_max)
    )


# --------------------------------------------------------------------------
# Winding-paired combination and complements
# --------------------------------------------------------------------------

def combine(
    s1: SequenceExpr,
    s2: SequenceExpr,
    base: BasePulse | None = None,
    name: str = "",
) -> SequenceExpr:
    """The word s1 sbar1 s2 sbar2, with verified cancellation preconditions.

    `s1` must wind to +identity and `s2` to -identity at zero offset, and
    their leading z-error orders must agree (checked numerically with
    `base`, default the simple pulse).  The opposite winding signs make
    the equal leading z errors cancel, so the combined word's z exponent
    strictly exceeds the common input exponent.

    Raises :class:`SequencePreconditionError` naming the failed check.
    """
    w1, w2 = winding_sign(s1), winding_sign(s2)
    if w1 != 1:
        raise SequencePreconditionError(
            f"winding: s1 ({s1.name or to_string(s1)}) must compose to +identity, got {w1:+d}"
        )
    if w2 != -1:
        raise SequencePreconditionError(
            f"winding: s2 ({s2.name or to_string(s2)}) must compose to -identity, got {w2:+d}"
        )
    base = base if base is not None else simple_pi()
    e1 = estimate_order(s1, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)
    e2 = estimate_order(s2, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)
    if abs(e1.exponent - e2.exponent) > 0.1:
        raise SequencePreconditionError(
            f"order mismatch: leading z exponents differ, "
            f"{e1.exponent:.3f} vs {e2.exponent:.3f}"
        )
    return concat(concat(s1, bar_seq(s1)), concat(s2, bar_seq(s2)), name)


def find_complement(s: SequenceExpr, base: BasePulse) -> SequenceExpr:
    """Find a same-length odd-winding word matching s's leading z error.

    Enumerates single-token phase flips first, then token pairs, and
    returns the first candidate (in token order) whose winding is odd and
    whose fitted leading z exponent and coefficient match the input's to
    1 percent.  Flipping one token always flips the winding sign, so
    single flips are the productive candidates; the pair pass is a search
    budget safeguard.
    """
    if winding_sign(s) != 1:
        raise SequencePreconditionError(
            f"complement search expects a +identity word, got {to_string(s)}"
        )
    target = estimate_order(s, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)

    def matches(candidate: SequenceExpr) -> bool:
        if winding_sign(candidate) != -1:
            return False
        try:
            est = estimate_order(candidate, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)
        except OrderFitError:
            return False
        if est.vanishing or abs(est.exponent - target.exponent) > 0.1:
            return False
        return abs(est.coefficient / target.coefficient - 1.0) <= 0.01

    n = len(s.tokens)
    for i in range(n):
        candidate = flip_token(s, i)
        if matches(candidate):
            return candidate
    for i in range(n):
        for j in range(i + 1, n):
            candidate = flip_token(flip_token(s, i), j)
            if matches(candidate):
                return candidate
    raise ComplementNotFoundError(
        f"no complement of {s.name or to_string(s)} found among single and pair flips"
    )


# --------------------------------------------------------------------------
# The canonical family
# --------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _canonical_parts() -> dict[str, SequenceExpr]:
    base = simple_pi()
    p = SequenceExpr((False,), "P")
    pp = concat(p, p, "PP")
    pq = concat(p, bar_seq(p), "PQ")
    a = combine(pq, pp, base, "A")
    b = flip_token(a, 0, "B")
    c = combine(a, b, base, "C")
    d = concat(concat(a, bar_seq(a)), concat(a, bar_seq(b)), "D")
    f = combine(c, d, base, "F")
    return {"PP": pp, "PQ": pq, "A": a, "B": b, "C": c, "D": d, "F": f}


@functools.lru_cache(maxsize=None)
def build_canonical(label: str) -> SequenceExpr:
    """Return the canonical sequence for a label in '2'..'256'.

    The family is '2' = PP, '4' = PP barred-PP, '8' = the SA arrangement
    of PP, then alternating antisymmetric and SA arrangements of the
    combined words A, C, F produced by :func:`combine`.
    """
    parts = _canonical_parts()
    builders = {
        "2": lambda: parts["PP"],
        "4": lambda: antisymmetrize(parts["PP"]),
        "8": lambda: sa(parts["PP"]),
        "16": lambda: antisymmetrize(parts["A"]),
        "32": lambda: sa(parts["A"]),
        "64": lambda: antisymmetrize(parts["C"]),
        "128": lambda: sa(parts["C"]),
        "256": lambda: antisymmetrize(parts["F"]),
    }
    if label not in builders:
        raise UnknownSequenceError(
            f"unknown sequence label {label!r} (expected one of {', '.join(CANONICAL_LABELS)})"
        )
    expr = builders[label]()
    assert len(expr) == int(label)
    return SequenceExpr(expr.tokens, label)


def resolve_sequence(spec: str | SequenceExpr) -> SequenceExpr:
    """Accept a canonical label, a PQ token string, or an expression."""
    if isinstance(spec, SequenceExpr):
        return spec
    if spec in CANONICAL_LABELS:
        return build_canonical(spec)
    try:
        return from_string(spec)
    except ValueError:
        raise UnknownSequenceError(
            f"unknown sequence {spec!r}: not a canonical label and not a P/Q token string"
        ) from None
