"""Command-line front end: sweeps, maps, the reference table, and export.

Commands write CSV (or JSON behind --format) with 17-significant-digit
decimal numbers; identical configurations produce byte-identical files.
Output goes to stdout unless --out is given, in which case the file is
written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import reference
from .analysis import (
    SweepSpec,
    epsilon_max,
    grid,
    offset_sweep,
    robustness_map,
    timestep_map,
)
from .exceptions import (
    ConfigError,
    OrderFitError,
    PulseValidationError,
    UnknownSequenceError,
)
from .pulses import BasePulse, BUILTIN_PULSES, load_pulse
from .sequences import build_canonical, estimate_order, resolve_sequence, to_string

LOG10_INFIDELITY_FLOOR = -15.0


def _fmt(value) -> str:
    return f"{value:.17g}"


def _log10_infidelity(fidelity: float) -> float:
    infidelity = 1.0 - fidelity
    if infidelity <= 10.0**LOG10_INFIDELITY_FLOOR:
        return LOG10_INFIDELITY_FLOOR
    return math.log10(infidelity)


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _render(columns: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"columns": columns, "rows": rows}, indent=2) + "\n"
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _resolve_pulse(name: str) -> BasePulse:
    if name in BUILTIN_PULSES:
        return BUILTIN_PULSES[name]()
    path = Path(name)
    if not path.exists():
        raise ConfigError(f"pulse {name!r} is not a built-in and no such config file exists")
    return load_pulse(path.read_text())


def cmd_sweep(args) -> int:
    pulse = _resolve_pulse(args.pulse)
    spec = SweepSpec(
        sequence=args.sequence,
        pulse=pulse,
        eps_min=args.eps_min,
        eps_max=args.eps_max,
        eps_step=args.eps_step,
        window_delay=args.window,
        amplitude_scale=args.amp_scale,
        timestep_scale=args.time_scale,
    )
    result = offset_sweep(spec)
    columns = ["epsilon", "fidelity", "log10_infidelity", "delta_1", "delta_x", "delta_y", "delta_z"]
    rows = [
        [
            float(result.epsilon[i]),
            float(result.fidelity[i]),
            _log10_infidelity(float(result.fidelity[i])),
            float(result.delta_1[i]),
            float(result.delta_x[i]),
            float(result.delta_y[i]),
            float(result.delta_z[i]),
        ]
        for i in range(len(result))
    ]
    _write_output(_render(columns, rows, args.format), args.out)
    return 0


def cmd_map(args) -> int:
    pulse = _resolve_pulse(args.pulse)
    eps_grid = grid(args.eps_min, args.eps_max, args.eps_step)
    scale_grid = grid(args.scale_min, args.scale_max, args.scale_step)
    mapper = robustness_map if args.scale_kind == "amplitude" else timestep_map
    result = mapper(args.sequence, pulse, eps_grid, scale_grid)
    columns = ["epsilon", "scale", "fidelity"]
    rows = [
        [float(result.epsilon[i]), float(result.scale[i]), float(result.fidelity[i])]
        for i in range(len(result))
    ]
    _write_output(_render(columns, rows, args.format), args.out)
    return 0


def cmd_export(args) -> int:
    expr = resolve_sequence(args.sequence)
    sys.stdout.write(to_string(expr) + "\n")
    return 0


def cmd_table1(args) -> int:
    pulses = {"simple": BUILTIN_PULSES["simple"](), "levitt3": BUILTIN_PULSES["levitt3"]()}
    if args.tycko_config is not None:
        pulses["tycko7"] = load_pulse(Path(args.tycko_config).read_text())
    else:
        sys.stderr.write("notice: 7-pulse column skipped (no --tycko-config given)\n")

    labels = reference.SEQUENCE_LABELS
    columns = ["sequence", "n_pulses"]
    for name in pulses:
        columns += [f"eps_max_{name}", f"eps_max_{name}_ref", f"eps_max_{name}_diff"]
    columns += [
        "delta_z_exponent",
        "delta_z_exponent_ref",
        "delta_y_exponent",
        "delta_y_exponent_ref",
    ]

    simple = pulses["simple"]
    rows = []
    for i, label in enumerate(labels):
        row: list = [label, float(int(label))]
        for name, pulse in pulses.items():
            edge = epsilon_max(label, pulse, reference.FIDELITY_THRESHOLD)
            ref = reference.EPS_MAX_REF[name][i]
            row += [edge, float(ref), abs(edge - ref)]
        expr = build_canonical(label)
        for component, refs in (
            ("delta_z", reference.DELTA_Z_EXPONENT_REF),
            ("delta_y", reference.DELTA_Y_EXPONENT_REF),
        ):
            try:
                est = estimate_order(expr, simple, component)
                row.append("vanishing" if est.vanishing else est.exponent)
            except OrderFitError:
                row.append("nofit")
            row.append(float(refs[i]))
        rows.append(row)
    _write_output(_render(columns, rows, args.format), args.out)
    return 0


def _add_common(parser: argparse.ArgumentParser, eps_step_default: float) -> None:
    parser.add_argument("--sequence", required=True,
                        help="canonical label ('2'..'256') or P/Q token string")
    parser.add_argument("--pulse", default="simple",
                        help="simple | levitt3 | path to a pulse config file")
    parser.add_argument("--eps-min", type=float, default=0.0)
    parser.add_argument("--eps-max", type=float, default=1.0)
    parser.add_argument("--eps-step", type=float, default=eps_step_default)
    parser.add_argument("--window", type=float, default=0.0,
                        help="delay before each pulse, in units of 1/nu1")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinrefocus",
        description="Refocussing-sequence sweeps for a spin-1/2 under static resonance offset",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="fidelity and error coefficients vs offset")
    _add_common(p_sweep, 0.005)
    p_sweep.add_argument("--amp-scale", type=float, default=1.0)
    p_sweep.add_argument("--time-scale", type=float, default=1.0)
    p_sweep.set_defaults(func=cmd_sweep)

    p_map = sub.add_parser("map", help="fidelity over (offset, scale factor)")
    _add_common(p_map, 0.01)
    p_map.add_argument("--scale-kind", choices=("amplitude", "timestep"), default="amplitude")
    p_map.add_argument("--scale-min", type=float, default=0.5)
    p_map.add_argument("--scale-max", type=float, default=1.5)
    p_map.add_argument("--scale-step", type=float, default=0.01)
    p_map.set_defaults(func=cmd_map)

    p_table = sub.add_parser("table1", help="band edges and error orders vs reference values")
    p_table.add_argument("--tycko-config", default=None,
                         help="pulse config for the 7-pulse column (skipped if absent)")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--out", default=None)
    p_table.set_defaults(func=cmd_table1)

    p_export = sub.add_parser("export", help="print the token string of a sequence")
    p_export.add_argument("--sequence", required=True)
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSequenceError as exc:
        sys.stderr.write(f"error: unknown sequence: {exc}\n")
        return 2
    except (ConfigError, PulseValidationError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
