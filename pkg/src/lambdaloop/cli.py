"""Command-line front end: single-point solves, sweeps, and self-checking
figure regeneration.

Configuration comes from three layers, later ones overriding earlier ones:
a catalogued preset (--preset / the reproduce figure id), an INI config file
(--config, section [params], keys named exactly after the SystemParams
fields), and --<field> flag overrides.  At this layer all 15 parameters must
end up with explicit values; a bare or empty configuration is rejected with
the full list of missing keys.

Every output file starts with a reproducibility header of '# key = value'
lines echoing the complete configuration plus a sha256 hash over it, and
nothing time- or host-dependent, so identical configurations yield
byte-identical files.  `parse_spectrum_header` turns such a header back into
a RunConfig.

Exit codes: 0 success, 1 configuration error, 2 solver error (the message
names the error kind and, inside sweeps, the offending grid point).
"""

import argparse
import configparser
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field, fields as dataclass_fields
from pathlib import Path

import numpy as np

from .dynamics import demodulate, harmonic_window, integrate
from .floquet import MediumConstants, assemble_components, solve_floquet
from .model import (COMPONENTS, RHO41, SimulationError, SystemParams,
                    build_liouvillian, loop_params, physical_state_violation,
                    rvector_to_matrix, validate_params)
from .presets import UnknownFigureError, resolve
from .spectra import (AXES, CHANNELS, MODES, Spectrum, group_index, sweep,
                      write_spectrum_csv)
from .steady import RESONANCE_TOL, probe_frame, solve_steady

ENV_OUTDIR = "LAMBDALOOP_OUTDIR"

PARAM_FIELDS = tuple(f.name for f in dataclass_fields(SystemParams))
COMPLEX_FIELDS = frozenset(("g31", "g32", "g42", "g41"))
#: Long-form spellings accepted for the detunings, in flags and config files.
FIELD_ALIASES = {"delta31": "d31", "delta32": "d32",
                 "delta42": "d42", "delta41": "d41"}

HEADER_FORMAT = "lambdaloop-spectrum-v1"


class ConfigError(Exception):
    """Invalid configuration (exit code 1)."""


class UnknownKeyError(ConfigError):
    """A config key or section that is not part of the schema."""


class TypeMismatchError(ConfigError):
    """A config value that does not parse as its declared type."""


class MissingRequiredError(ConfigError):
    """Required keys absent; the message names every one of them."""


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation: a command, parameters, and options."""

    command: str
    params: SystemParams
    options: dict = field(default_factory=dict)
    out_dir: Path = Path(".")

    def opt(self, name, default=None):
        return self.options.get(name, default)


# ---------------------------------------------------------------------------
# Value (de)serialization: 17 significant digits, lossless double round trip
# ---------------------------------------------------------------------------


def _f17(x: float) -> str:
    return f"{float(x):.17g}"


def _serialize(name: str, value) -> str:
    if name in COMPLEX_FIELDS:
        z = complex(value)
        return f"{z.real:.17g}{z.imag:+.17g}j"
    return _f17(value)


def _parse_value(name: str, raw: str):
    try:
        if name in COMPLEX_FIELDS:
            return complex(raw.strip())
        return float(raw.strip())
    except ValueError:
        kind = "complex" if name in COMPLEX_FIELDS else "real"
        raise TypeMismatchError(
            f"parameter {name}: expected a {kind} number, got {raw!r}") from None


# ---------------------------------------------------------------------------
# Configuration assembly
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors map to exit code 1, not 2."""

    def error(self, message):
        raise ConfigError(message)


def _read_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    unknown = [s for s in parser.sections() if s != "params"]
    if unknown:
        raise UnknownKeyError(
            f"unknown section(s) {', '.join(unknown)} in {path}; expected [params]")
    values = {}
    if parser.has_section("params"):
        for key, raw in parser.items("params"):
            name = FIELD_ALIASES.get(key, key)
            if name not in PARAM_FIELDS:
                raise UnknownKeyError(f"unknown parameter key {key!r} in {path}")
            values[name] = _parse_value(name, raw)
    return values


def _assemble_params(preset_values: dict, config_path, overrides: dict) -> SystemParams:
    """Merge preset < config file < flags and insist on all 15 fields."""
    values = dict(preset_values)
    if config_path:
        values.update(_read_config_file(config_path))
    values.update(overrides)
    missing = [name for name in PARAM_FIELDS if name not in values]
    if missing:
        raise MissingRequiredError(
            "missing required parameter(s): " + ", ".join(missing))
    try:
        return validate_params(SystemParams(**values))
    except SimulationError as exc:
        raise ConfigError(f"invalid parameters: {exc}") from exc


def _preset_values(figure_id: str) -> dict:
    preset = resolve(figure_id)[0]
    return {name: getattr(preset.params, name) for name in PARAM_FIELDS}


def _build_parser() -> argparse.ArgumentParser:
    source = _Parser(add_help=False)
    source.add_argument("--config", metavar="FILE",
                        help="INI file with a [params] section")
    source.add_argument("--out-dir", dest="out_dir", metavar="DIR",
                        help=f"output directory (default ${ENV_OUTDIR} or cwd)")

    preset = _Parser(add_help=False)
    preset.add_argument("--preset", metavar="FIGURE_ID",
                        help="start from a catalogued parameter set")

    params = _Parser(add_help=False)
    group = params.add_argument_group(
        "parameter overrides", "one flag per SystemParams field")
    for name in PARAM_FIELDS:
        kind = complex if name in COMPLEX_FIELDS else float
        group.add_argument(f"--{name}", type=kind, default=None, metavar="X")
    for alias, target in FIELD_ALIASES.items():
        group.add_argument(f"--{alias}", type=float, default=None,
                           dest=target, metavar="X", help=f"alias for --{target}")

    parser = _Parser(
        prog="lambdaloop",
        description="Probe response, group index, and sub-/superluminal "
                    "classification for a four-level double-Lambda medium "
                    "driven by a closed loop of laser fields.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sub.add_parser("steady", parents=[source, preset, params],
                   help="steady state on multiphoton resonance")
    sub.add_parser("floquet", parents=[source, preset, params],
                   help="harmonic amplitudes and channels at one point")

    dyn = sub.add_parser("dynamics", parents=[source, preset, params],
                         help="time integration and harmonic demodulation")
    dyn.add_argument("--t-end", dest="t_end", type=float, default=100.0)
    dyn.add_argument("--dt", type=float, default=0.01)
    dyn.add_argument("--settle", type=float, default=50.0)
    dyn.add_argument("--periods", type=int, default=10)
    dyn.add_argument("--traj-out", dest="traj_out", metavar="FILE",
                     help="also dump the trajectory as CSV")

    def add_grid_args(p):
        p.add_argument("--axis", choices=AXES, required=True)
        p.add_argument("--start", type=float, required=True)
        p.add_argument("--stop", type=float, required=True)
        p.add_argument("--points", type=int, required=True)
        p.add_argument("--mode", choices=MODES, default="steady_if_resonant")

    swp = sub.add_parser("sweep", parents=[source, preset, params],
                         help="detuning sweep to a spectrum CSV")
    add_grid_args(swp)
    swp.add_argument("--out", metavar="FILE", help="CSV file name")

    gix = sub.add_parser("group-index", parents=[source, preset, params],
                         help="group index from a dispersion slope")
    add_grid_args(gix)
    gix.add_argument("--at", type=float, required=True,
                     help="detuning at which to evaluate")
    gix.add_argument("--channel", choices=CHANNELS, default="direct")
    gix.add_argument("--sodium", action="store_true",
                     help="apply the sodium D1 SI susceptibility prefactor")

    rep = sub.add_parser("reproduce", parents=[source, params],
                         help="regenerate catalogued figures with self-checks")
    rep.add_argument("figure_id", metavar="FIGURE_ID",
                     help="panel id (fig3a) or group id (fig3)")
    return parser


def parse_config(argv=None) -> RunConfig:
    """CLI arguments (+ config file + preset) -> one RunConfig."""
    args = _build_parser().parse_args(argv)
    if args.command is None:
        raise MissingRequiredError(
            "no command given; expected one of steady, floquet, dynamics, "
            "sweep, group-index, reproduce")
    overrides = {name: getattr(args, name) for name in PARAM_FIELDS
                 if getattr(args, name) is not None}
    out_dir = Path(args.out_dir or os.environ.get(ENV_OUTDIR) or ".")

    options = {}
    if args.command == "dynamics":
        options = {"t_end": args.t_end, "dt": args.dt, "settle": args.settle,
                   "periods": args.periods, "traj_out": args.traj_out}
    elif args.command in ("sweep", "group-index"):
        options = {"axis": args.axis, "start": args.start, "stop": args.stop,
                   "points": args.points, "mode": args.mode}
        if args.command == "sweep":
            options["out"] = args.out
        else:
            options.update({"at": args.at, "channel": args.channel,
                            "sodium": args.sodium})

    if args.command == "reproduce":
        options = {"figure_id": args.figure_id, "overrides": dict(overrides)}
        if args.config:
            file_values = _read_config_file(args.config)
            file_values.update(options["overrides"])
            options["overrides"] = file_values
        params = _assemble_params(_preset_values(args.figure_id), None,
                                  options["overrides"])
    else:
        preset_values = _preset_values(args.preset) if args.preset else {}
        params = _assemble_params(preset_values, args.config, overrides)
    return RunConfig(command=args.command, params=params, options=options,
                     out_dir=out_dir)


# ---------------------------------------------------------------------------
# Reproducibility headers
# ---------------------------------------------------------------------------


def _sweep_meta(command: str, p: SystemParams, axis: str, start: float,
                stop: float, points: int, mode: str,
                figure_id=None, channel=None) -> dict:
    """Ordered key -> serialized-value mapping echoed above every spectrum."""
    meta = {"format": HEADER_FORMAT, "command": command}
    if figure_id is not None:
        meta["figure_id"] = figure_id
    if channel is not None:
        meta["channel"] = channel
    meta.update({"axis": axis, "grid_start": _f17(start), "grid_stop": _f17(stop),
                 "grid_points": str(int(points)), "mode": mode})
    for name in PARAM_FIELDS:
        meta[f"params.{name}"] = _serialize(name, getattr(p, name))
    return meta


def _config_hash(meta: dict) -> str:
    blob = "\n".join(f"{k} = {v}" for k, v in meta.items())
    return hashlib.sha256(blob.encode()).hexdigest()


def _header_lines(meta: dict) -> list:
    return [f"{k} = {v}" for k, v in meta.items()] + \
        [f"config_sha256 = {_config_hash(meta)}"]


def parse_spectrum_header(path) -> RunConfig:
    """Rebuild the RunConfig echoed at the top of a spectrum CSV.

    Verifies the embedded config hash, so a tampered or truncated header is
    rejected rather than round-tripped.
    """
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition(" = ")
            meta[key] = value
    stored_hash = meta.pop("config_sha256", None)
    if meta.get("format") != HEADER_FORMAT or stored_hash is None:
        raise ConfigError(f"{path}: no reproducibility header found")
    if _config_hash(meta) != stored_hash:
        raise ConfigError(f"{path}: reproducibility header fails its hash check")
    values = {name: _parse_value(name, meta[f"params.{name}"])
              for name in PARAM_FIELDS if f"params.{name}" in meta}
    missing = [name for name in PARAM_FIELDS if name not in values]
    if missing:
        raise MissingRequiredError(
            f"{path}: header lacks parameter(s): " + ", ".join(missing))
    options = {"axis": meta["axis"], "start": float(meta["grid_start"]),
               "stop": float(meta["grid_stop"]), "points": int(meta["grid_points"]),
               "mode": meta["mode"]}
    for extra in ("figure_id", "channel"):
        if extra in meta:
            options[extra] = meta[extra]
    return RunConfig(command=meta["command"], params=SystemParams(**values),
                     options=options, out_dir=Path(path).parent)


def _write_spectrum(path: Path, spectrum: Spectrum, meta: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_spectrum_csv(spectrum, fh, _header_lines(meta))


def rerun_spectrum(config: RunConfig) -> tuple[Spectrum, dict]:
    """Recompute the sweep described by a (possibly re-parsed) RunConfig."""
    o = config.options
    grid = np.linspace(o["start"], o["stop"], o["points"])
    spectrum = sweep(config.params, o["axis"], grid, o["mode"])
    meta = _sweep_meta(config.command, config.params, o["axis"], o["start"],
                       o["stop"], o["points"], o["mode"],
                       figure_id=o.get("figure_id"), channel=o.get("channel"))
    return spectrum, meta


# ---------------------------------------------------------------------------
# Qualitative figure checks
# ---------------------------------------------------------------------------


def _node(spectrum: Spectrum, x: float) -> int:
    i = int(np.argmin(np.abs(spectrum.grid - x)))
    if abs(spectrum.grid[i] - x) > 1e-9:
        raise SimulationError(f"evaluation point {x:g} is not a grid node")
    return i


def _value(spectrum: Spectrum, channel: str, x: float) -> complex:
    return spectrum.channel(channel)[_node(spectrum, x)]


def _slope(spectrum: Spectrum, channel: str, x: float) -> float:
    i = _node(spectrum, x)
    v = spectrum.channel(channel)
    return float((v[i + 1].real - v[i - 1].real)
                 / (spectrum.grid[i + 1] - spectrum.grid[i - 1]))


def _xcorr(x, y) -> float:
    x = np.asarray(x, dtype=float) - np.mean(x)
    y = np.asarray(y, dtype=float) - np.mean(y)
    return float(np.dot(x, y) / (np.linalg.norm(x) * np.linalg.norm(y)))


def _slope_sign(pid, channel, at, positive):
    def check(spectra):
        s = _slope(spectra[pid], channel, at)
        return (s > 0.0) == positive, s
    word = "rises" if positive else "falls"
    return f"{pid}: Re({channel}) {word} at {at:g}", check


def _imag_sign(pid, channel, at, positive):
    def check(spectra):
        v = _value(spectra[pid], channel, at).imag
        return (v > 0.0) == positive, v
    word = "gain" if positive else "absorption"
    return f"{pid}: Im({channel}) shows {word} at {at:g}", check


def _real_sign(pid, channel, at, positive):
    def check(spectra):
        v = _value(spectra[pid], channel, at).real
        return (v > 0.0) == positive, v
    sign = "positive" if positive else "negative"
    return f"{pid}: Re({channel}) {sign} at {at:g}", check


def _classified(pid, at, want, require_gain=False, allow_low_absorption=False):
    def check(spectra):
        res = group_index(spectra[pid], at=at, component="direct")
        ok = res.classification.startswith(want)
        if require_gain:
            ok = ok and res.gain_flag
        if allow_low_absorption:
            ok = ok and (res.gain_flag or abs(res.chi_double_prime) <= 0.02)
        return ok, res.n_g
    extra = " with gain" if require_gain else ""
    return f"{pid}: {want} group index at {at:g}{extra}", check


def _shape_match(pid_a, part_a, pid_b, part_b, minimum):
    def check(spectra):
        take = {"re": np.real, "im": np.imag}
        corr = _xcorr(take[part_a](spectra[pid_a].channel("total")),
                      take[part_b](spectra[pid_b].channel("total")))
        return corr >= minimum, corr
    return (f"{pid_a}: Re(total) matches {pid_b} Im(total) shape "
            f"(correlation >= {minimum:g})", check)


def _opposite_counter(pid_a, pid_b):
    def check(spectra):
        worst = float(np.max(np.abs(spectra[pid_a].channel("counter")
                                    + spectra[pid_b].channel("counter"))))
        return worst <= 1e-12, worst
    return f"{pid_a}/{pid_b}: counter channels are exact opposites", check


def _slope_flip(pid_a, pid_b, channel, at):
    def check(spectra):
        product = _slope(spectra[pid_a], channel, at) * _slope(spectra[pid_b], channel, at)
        return product < 0.0, product
    return f"{pid_a}->{pid_b}: dispersion slope changes sign at {at:g}", check


_PANEL_CHECKS = {
    "fig3a": [_slope_sign("fig3a", "total", 0.0, True),
              _imag_sign("fig3a", "total", 0.0, False)],
    "fig3b": [_slope_sign("fig3b", "total", 0.0, False),
              _imag_sign("fig3b", "total", 0.0, True)],
    "fig3c": [_real_sign("fig3c", "total", 0.0, False)],
    "fig4": [_imag_sign("fig4", "direct", 0.0, True)],
    "fig5a": [_imag_sign("fig5a", "counter", 0.0, False)],
    "fig5b": [_imag_sign("fig5b", "counter", 0.0, True)],
    "fig6a": [_slope_sign("fig6a", "direct", 2.0, True),
              _slope_sign("fig6a", "direct", -2.0, True),
              _imag_sign("fig6a", "direct", 2.0, False),
              _imag_sign("fig6a", "direct", -2.0, False),
              _slope_sign("fig6a", "direct", 0.0, False)],
    "fig6b": [_slope_sign("fig6b", "direct", 0.0, True)],
    "fig7a": [_classified("fig7a", 0.0, "subluminal", allow_low_absorption=True)],
    "fig7b": [_classified("fig7b", 0.0, "superluminal")],
    "fig7c": [_classified("fig7c", 0.0, "superluminal", allow_low_absorption=True)],
    "fig8a": [_classified("fig8a", -5.0, "subluminal", require_gain=True)],
    "fig8b": [_classified("fig8b", -5.0, "subluminal", require_gain=True)],
    "fig8c": [_classified("fig8c", -5.0, "superluminal", require_gain=True)],
}

_GROUP_CHECKS = {
    "fig3": [_shape_match("fig3c", "re", "fig3a", "im", 0.95)],
    "fig5": [_opposite_counter("fig5a", "fig5b")],
    "fig7": [_slope_flip("fig7a", "fig7c", "direct", 0.0)],
}


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _print_kv(key, value):
    if isinstance(value, complex):
        print(f"{key} = {_f17(value.real)} {_f17(value.imag)}")
    elif isinstance(value, float):
        print(f"{key} = {_f17(value)}")
    else:
        print(f"{key} = {value}")


def _run_steady(config: RunConfig) -> int:
    p = config.params
    parts = build_liouvillian(p)
    loop = loop_params(p)
    state = solve_steady(parts, loop)
    rho = rvector_to_matrix(state.r)
    _print_kv("command", "steady")
    _print_kv("delta", loop.delta)
    _print_kv("condition_number", state.condition_number)
    _print_kv("rho41_interaction_frame", state.rho41)
    _print_kv("rho41_probe_frame", probe_frame(state.rho41, loop, 0.0))
    for i in range(4):
        _print_kv(f"rho{i + 1}{i + 1}", float(rho[i, i].real))
    _print_kv("physical_state_violation", physical_state_violation(state.r))
    return 0


def _run_floquet(config: RunConfig) -> int:
    p = config.params
    parts = build_liouvillian(p)
    loop = loop_params(p)
    sol = solve_floquet(parts, loop)
    comps = assemble_components(sol, parts, loop, t=0.0)
    _print_kv("command", "floquet")
    _print_kv("delta", loop.delta)
    _print_kv("r0_41", complex(sol.r0[RHO41]))
    _print_kv("r1_41_per_unit_probe", complex(sol.r1[RHO41]))
    _print_kv("rm1_41_per_unit_probe", complex(sol.rm1[RHO41]))
    _print_kv("direct", comps.direct)
    _print_kv("loop_scatter", complex(comps.loop_scatter))
    _print_kv("counter", complex(comps.counter))
    if abs(loop.delta) <= RESONANCE_TOL:
        _print_kv("total", complex(comps.total))
    return 0


def _write_trajectory(path: Path, traj, meta: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in _header_lines(meta):
            fh.write(f"# {line}\n")
        names = [f"{part}_{name}" for name in COMPONENTS for part in ("re", "im")]
        fh.write("time," + ",".join(names) + "\n")
        for t, state in zip(traj.times, traj.states):
            cells = [_f17(t)]
            for z in state:
                cells += [_f17(z.real), _f17(z.imag)]
            fh.write(",".join(cells) + "\n")


def _run_dynamics(config: RunConfig) -> int:
    p = config.params
    parts = build_liouvillian(p)
    loop = loop_params(p)
    _print_kv("command", "dynamics")
    _print_kv("delta", loop.delta)
    if abs(loop.delta) <= RESONANCE_TOL:
        traj = integrate(parts, loop, t_end=config.opt("t_end", 100.0),
                         dt_max=config.opt("dt", 0.01))
        final = traj.states[-1]
        _print_kv("t_end", float(traj.times[-1]))
        _print_kv("rho41_final", complex(final[RHO41]))
        _print_kv("rho41_steady", complex(solve_steady(parts, loop).rho41))
        _print_kv("physical_state_violation", physical_state_violation(final))
    else:
        t_end, dt, window = harmonic_window(
            loop, settle=config.opt("settle", 50.0),
            periods=config.opt("periods", 10), dt_target=config.opt("dt", 0.01))
        traj = integrate(parts, loop, t_end=t_end, dt_max=dt)
        a0, a_plus, a_minus = demodulate(traj, loop, window)
        sol = solve_floquet(parts, loop)
        refs = (complex(sol.r0[RHO41]),
                complex(parts.gbar41 * sol.r1[RHO41]),
                complex(np.conj(parts.gbar41) * sol.rm1[RHO41]))
        _print_kv("t_end", t_end)
        _print_kv("dt", dt)
        for label, measured, ref in zip(("constant", "plus", "minus"),
                                        (a0, a_plus, a_minus), refs):
            _print_kv(f"amplitude_{label}", measured)
            _print_kv(f"amplitude_{label}_floquet", ref)
            scale = max(abs(ref), 1e-30)
            _print_kv(f"amplitude_{label}_rel_err", abs(measured - ref) / scale)
    if config.opt("traj_out"):
        meta = {"format": "lambdaloop-trajectory-v1", "command": "dynamics"}
        for name in PARAM_FIELDS:
            meta[f"params.{name}"] = _serialize(name, getattr(p, name))
        for key in ("t_end", "dt", "settle", "periods"):
            meta[key] = _f17(config.opt(key)) if key != "periods" \
                else str(config.opt(key))
        out = config.out_dir / config.opt("traj_out")
        _write_trajectory(out, traj, meta)
        print(out)
    return 0


def _run_sweep(config: RunConfig) -> int:
    o = config.options
    grid = np.linspace(o["start"], o["stop"], o["points"])
    spectrum = sweep(config.params, o["axis"], grid, o["mode"])
    meta = _sweep_meta("sweep", config.params, o["axis"], o["start"], o["stop"],
                       o["points"], o["mode"])
    out = config.out_dir / (o.get("out") or f"sweep_{o['axis']}.csv")
    _write_spectrum(out, spectrum, meta)
    print(out)
    return 0


def _run_group_index(config: RunConfig) -> int:
    o = config.options
    grid = np.linspace(o["start"], o["stop"], o["points"])
    spectrum = sweep(config.params, o["axis"], grid, o["mode"])
    medium = MediumConstants.sodium_d1() if o.get("sodium") else None
    result = group_index(spectrum, at=o["at"], component=o["channel"],
                         medium=medium)
    _print_kv("command", "group-index")
    _print_kv("at", float(o["at"]))
    _print_kv("channel", o["channel"])
    _print_kv("n_g", result.n_g)
    _print_kv("v_g_over_c", result.v_g_over_c)
    _print_kv("dispersion_slope", result.dispersion_slope)
    _print_kv("chi_prime", result.chi_prime)
    _print_kv("chi_double_prime", result.chi_double_prime)
    _print_kv("classification", result.classification)
    _print_kv("gain_flag", result.gain_flag)
    return 0


def _run_reproduce(config: RunConfig) -> int:
    figure_id = config.opt("figure_id")
    overrides = config.opt("overrides") or {}
    panels = resolve(figure_id)
    spectra = {}
    panel_entries = []
    for preset in panels:
        values = {name: getattr(preset.params, name) for name in PARAM_FIELDS}
        values.update(overrides)
        try:
            p = validate_params(SystemParams(**values))
        except SimulationError as exc:
            raise ConfigError(f"invalid parameters: {exc}") from exc
        spectrum = sweep(p, preset.axis, preset.grid(), preset.mode)
        spectra[preset.figure_id] = spectrum
        meta = _sweep_meta("reproduce", p, preset.axis, preset.grid_start,
                           preset.grid_stop, preset.grid_points, preset.mode,
                           figure_id=preset.figure_id, channel=preset.channel)
        csv_name = f"{preset.figure_id}.csv"
        _write_spectrum(config.out_dir / csv_name, spectrum, meta)
        panel_entries.append({"figure_id": preset.figure_id, "csv": csv_name,
                              "channel": preset.channel,
                              "config_sha256": _config_hash(meta)})
        print(config.out_dir / csv_name)

    # Qualitative self-checks only make sense for the catalogued parameters;
    # with overrides in play the expected features no longer apply.
    check_results = []
    if not overrides:
        checks = []
        for preset in panels:
            checks.extend(_PANEL_CHECKS.get(preset.figure_id, ()))
        checks.extend(_GROUP_CHECKS.get(figure_id, ()))
        for name, fn in checks:
            passed, value = fn(spectra)
            check_results.append(
                {"name": name, "passed": bool(passed), "value": float(value)})
            print(f"{'PASS' if passed else 'FAIL'}  {name}  (value = {value:.6g})")
    all_passed = all(c["passed"] for c in check_results)

    manifest = {
        "figure_id": figure_id,
        "panels": panel_entries,
        "parameter_overrides": {k: _serialize(k, v) for k, v in sorted(overrides.items())},
        "checks": check_results,
        "all_passed": all_passed,
    }
    manifest_path = config.out_dir / f"{figure_id}_manifest.json"
    manifest_path.parent.mkdir(parents=True, exist_ok=True)
    with open(manifest_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(manifest_path)
    if not all_passed:
        print(f"reproduce {figure_id}: "
              f"{sum(not c['passed'] for c in check_results)} check(s) failed",
              file=sys.stderr)
        return 2
    return 0


_HANDLERS = {
    "steady": _run_steady,
    "floquet": _run_floquet,
    "dynamics": _run_dynamics,
    "sweep": _run_sweep,
    "group-index": _run_group_index,
    "reproduce": _run_reproduce,
}


def run(config: RunConfig) -> int:
    """Execute one parsed invocation; artifacts land under config.out_dir."""
    return _HANDLERS[config.command](config)


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
        return run(config)
    except UnknownFigureError as exc:
        print(f"config error: {exc.args[0]}", file=sys.stderr)
        return 1
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except SimulationError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
