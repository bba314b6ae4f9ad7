"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Criterion 3 is conditional on a 7-pulse config at
``configs/tycko7.json`` and reports as skipped when the config is absent.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import flat_segments, oracle_steps, random_unitaries
from spinrefocus.analysis import epsilon_max, grid, timestep_map
from spinrefocus.cli import main as cli_main
from spinrefocus.pulses import (
    bar_pulse,
    levitt3,
    load_pulse,
    propagate_pulse,
    simple_pi,
)
from spinrefocus.reference import (
    DELTA_Y_EXPONENT_REF,
    DELTA_Z_EXPONENT_REF,
    EPS_MAX_REF,
    SEQUENCE_LABELS,
)
from spinrefocus.sequences import (
    MATCH_EPS_MAX,
    MATCH_EPS_MIN,
    SequenceExpr,
    bar_seq,
    build_canonical,
    combine,
    concat,
    estimate_order,
    find_complement,
    flip_token,
    from_string,
    sequence_propagator,
    to_string,
)
from spinrefocus.su2 import (
    Unitary2,
    bar,
    compose,
    identity,
    integrate_oracle,
    segment_propagator,
)

TYCKO_CONFIG_PATH = Path(__file__).resolve().parent.parent / "configs" / "tycko7.json"


def report(number: int, name: str, ok: bool, detail: str = "", status: str = "") -> None:
    status = status or ("PASS" if ok else "FAIL")
    print(f"ACCEPTANCE {number} {name}: {status}{'  ' + detail if detail else ''}")


def band_edges(pulse) -> list[float]:
    return [epsilon_max(label, pulse, 0.99) for label in SEQUENCE_LABELS]


def test_criterion_1_band_edges_simple_pulse():
    start = time.perf_counter()
    edges = band_edges(simple_pi())
    elapsed = time.perf_counter() - start
    diffs = [abs(e - r) for e, r in zip(edges, EPS_MAX_REF["simple"])]
    ok = max(diffs) <= 0.03 and elapsed < 60.0
    report(1, "band edges, simple pulse", ok,
           f"max|diff|={max(diffs):.4f}, {elapsed:.1f}s")
    assert max(diffs) <= 0.03, list(zip(SEQUENCE_LABELS, edges, EPS_MAX_REF["simple"]))
    assert elapsed < 60.0


def test_criterion_2_band_edges_three_pulse():
    edges = band_edges(levitt3())
    diffs = [abs(e - r) for e, r in zip(edges, EPS_MAX_REF["levitt3"])]
    ok = max(diffs) <= 0.03
    report(2, "band edges, 3-pulse composite", ok, f"max|diff|={max(diffs):.4f}")
    assert ok, list(zip(SEQUENCE_LABELS, edges, EPS_MAX_REF["levitt3"]))


def test_criterion_3_band_edges_seven_pulse_conditional():
    if not TYCKO_CONFIG_PATH.exists():
        report(3, "band edges, 7-pulse composite", True, "(no config present)", status="SKIP")
        pytest.skip("7-pulse config not present; criterion reported as skipped")
    pulse = load_pulse(TYCKO_CONFIG_PATH.read_text())
    edges = band_edges(pulse)
    diffs = [abs(e - r) for e, r in zip(edges, EPS_MAX_REF["tycko7"])]
    ok = max(diffs) <= 0.03
    # under-rotation by timestep scaling widens the f >= 0.999 band
    res = timestep_map("64", pulse, grid(0.0, 1.2, 0.01), np.array([0.8]))
    band_ok = bool(np.all(res.fidelity >= 0.999))
    report(3, "band edges, 7-pulse composite", ok and band_ok,
           f"max|diff|={max(diffs):.4f}, scaled-band ok={band_ok}")
    assert ok, list(zip(SEQUENCE_LABELS, edges, EPS_MAX_REF["tycko7"]))
    assert band_ok


def test_criterion_4_error_order_exponents():
    base = simple_pi()
    failures = []
    excluded = []
    for component, refs in (("delta_z", DELTA_Z_EXPONENT_REF),
                            ("delta_y", DELTA_Y_EXPONENT_REF)):
        for label, ref in zip(SEQUENCE_LABELS, refs):
            est = estimate_order(build_canonical(label), base, component)
            if est.vanishing:
                excluded.append(f"{label}:{component}")
                continue
            if abs(est.exponent - ref) > 0.3:
                failures.append((label, component, est.exponent, ref))
    ok = not failures
    report(4, "error-order exponents", ok,
           f"excluded as vanishing: {', '.join(excluded) or 'none'}")
    assert ok, failures


def test_criterion_5_algebraic_property_suite():
    rng = np.random.default_rng(20240811)
    checks = {}

    u = random_unitaries(rng, 1)
    drift = 0.0
    for _ in range(10_000):
        u = compose(u, random_unitaries(rng, 1))
        drift = max(drift, float(np.abs(u.norm_squared() - 1.0).max()))
    checks["norm"] = drift <= 1e-10

    a = random_unitaries(rng, 1000)
    b = random_unitaries(rng, 1000)
    hom_l, hom_r = bar(compose(a, b)), compose(bar(a), bar(b))
    checks["bar homomorphism"] = bool(
        np.abs(hom_l.a - hom_r.a).max() <= 1e-14
        and np.abs(hom_l.b - hom_r.b).max() <= 1e-14
    )
    inv = bar(bar(a))
    checks["bar involution"] = bool(
        np.array_equal(inv.a, a.a) and np.array_equal(inv.b, a.b)
    )

    spinor_ok = True
    for k in range(1, 5):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        w = identity()
        for _ in range(2 * k):
            w = compose(w, Unitary2(0.0, n))
        spinor_ok &= abs(float(w.a) - (-1.0) ** k) <= 1e-10
        spinor_ok &= float(np.abs(w.b).max()) <= 1e-10
    checks["spinor sign"] = bool(spinor_ok)

    v = compose(a, bar(a))
    checks["antisymmetric identities"] = bool(
        np.abs(v.b[:, 2] - 2 * a.a * a.b[:, 2]).max() <= 1e-10
        and np.abs(np.abs(v.b[:, 0]) - 2 * np.abs(a.b[:, 1] * a.b[:, 2])).max() <= 1e-10
        and np.abs(np.abs(v.b[:, 1]) - 2 * np.abs(a.b[:, 0] * a.b[:, 2])).max() <= 1e-10
    )

    commute_ok = True
    offsets = np.linspace(-1.0, 1.0, 20)
    for pulse in (simple_pi(), levitt3()):
        left = propagate_pulse(bar_pulse(pulse), offsets)
        right = bar(propagate_pulse(pulse, offsets))
        commute_ok &= float(np.abs(left.a - right.a).max()) <= 1e-12
        commute_ok &= float(np.abs(left.b - right.b).max()) <= 1e-12
    checks["pulse bar commutes"] = bool(commute_ok)

    ok = all(checks.values())
    report(5, "algebraic property suite", ok,
           ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items()))
    assert ok, checks


def test_criterion_6_oracle_equivalence():
    worst = 0.0
    cases = []
    for pulse in (simple_pi(), levitt3()):
        cases.append((pulse.name, pulse.segments))
        for label in ("2", "4", "8", "16"):
            cases.append(
                (f"{label}/{pulse.name}", flat_segments(build_canonical(label), pulse))
            )
    pulses = {"simple_pi": simple_pi(), "levitt3": levitt3()}
    for name, segments in cases:
        for eps in (0.0, 0.25, 0.5, 1.0):
            steps = oracle_steps(segments, eps, 2e-9)
            ua = identity()
            for seg in segments:
                ua = compose(
                    ua,
                    segment_propagator(seg.amplitude_rel, seg.phase, seg.nominal_angle, eps),
                )
            uo = integrate_oracle(segments, eps, steps)
            diff = max(
                abs(float(ua.a) - float(uo.a)), float(np.abs(ua.b - uo.b).max())
            )
            worst = max(worst, diff)
    ok = worst <= 1e-8
    report(6, "oracle equivalence", ok, f"worst diff {worst:.2e}")
    assert ok


def test_criterion_7_construction_invariants():
    base = simple_pi()
    p = SequenceExpr((False,), "P")
    pp = concat(p, p)
    pq = concat(p, bar_seq(p))

    a = combine(pq, pp)
    e_pq = estimate_order(pq, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)
    e_a = estimate_order(a, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)
    first_increase = e_a.exponent > e_pq.exponent + 0.5

    b = find_complement(a, base)
    complement_ok = to_string(b) == to_string(flip_token(a, 0))

    c = combine(a, b)
    e_c = estimate_order(c, base, "delta_z", MATCH_EPS_MIN, MATCH_EPS_MAX)
    second_increase = e_c.exponent > e_a.exponent + 0.5

    e_64 = estimate_order(build_canonical("64"), base, "delta_z")
    sixty_four_ok = (not e_64.vanishing) and abs(e_64.exponent - 7.0) <= 0.3

    ok = first_increase and complement_ok and second_increase and sixty_four_ok
    report(7, "construction invariants", ok,
           f"z exponents {e_pq.exponent:.2f}->{e_a.exponent:.2f}->{e_c.exponent:.2f}, "
           f"complement={'flip-first' if complement_ok else 'WRONG'}, "
           f"'64' z exponent {e_64.exponent:.2f}")
    assert ok


def test_criterion_8_windowed_band_stability():
    """Windowed '16' band edges for the figure delays.

    As specified this bound does not hold: the windowed propagator is
    verified against the brute-force integrator, yet free-evolution
    windows carve the '16' word's 0.99 band back to about 0.64 for every
    delay (the working plateau below 0.6 is preserved, and the SA words
    are stable; see the windowed-mode tests and the analysis notes).
    This test states the criterion faithfully and is expected to fail.
    """
    base = levitt3()
    e0 = epsilon_max("16", base, 0.99)
    edges = {d: epsilon_max("16", base, 0.99, window_delay=d) for d in (8.0, 36.0, 48.0)}
    diffs = {d: abs(e - e0) for d, e in edges.items()}
    ok = max(diffs.values()) <= 0.05
    report(8, "windowed band stability", ok,
           f"windowless {e0:.3f}; " +
           ", ".join(f"delay {d:g}: {e:.3f} (diff {diffs[d]:.3f})" for d, e in edges.items()))
    assert ok, (
        "windowed '16' band edges differ from windowless by "
        f"{max(diffs.values()):.3f} > 0.05; measured edges {edges} against "
        f"windowless {e0:.4f}. The discrepancy is analyzed in the project "
        "notes; the plateau-level stability that does hold is covered by "
        "tests/test_analysis.py::TestWindowedMode."
    )


def test_criterion_9_table_command_determinism(tmp_path):
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    assert cli_main(["table1", "--out", str(first)]) == 0
    assert cli_main(["table1", "--out", str(second)]) == 0
    ok = first.read_bytes() == second.read_bytes()
    report(9, "table command determinism", ok)
    assert ok
