"""Detuning sweeps, spectra per scattering channel, and group-index analysis.

Two sweep axes exist.  The raman axis moves the two |1>-side detunings
together (d31 = d41 = delta12, the lower-state two-photon detuning) so the
multiphoton detuning stays fixed at d32 - d42; with d32 = d42 this keeps the
system on multiphoton resonance across the whole sweep.  The probe axis
moves only d41 with all coupling detunings held fixed, which takes the
system off resonance everywhere except where delta happens to vanish.

The group index follows from the dispersion slope of the real part of the
susceptibility:

    n_g = 1 + 2*pi*chi' + 2*pi*(omega_p/gamma0)*(d chi'/d d41),

with the probe carrier omega_p/gamma0 supplied by the medium constants
(sodium D1 by default).  n_g > 1 is subluminal propagation, 0 < n_g < 1
superluminal, n_g < 0 superluminal with negative group velocity.
"""

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

from .floquet import MediumConstants, assemble_components, solve_floquet, susceptibility
from .model import SimulationError, SystemParams, build_liouvillian, loop_params
from .steady import RESONANCE_TOL, probe_frame, solve_steady

AXES = ("raman_delta12", "probe_delta41")
MODES = ("steady_if_resonant", "floquet_direct")
CHANNELS = ("direct", "loop", "counter", "total")

CSV_HEADER = ["axis", "delta", "re_direct", "im_direct", "re_loop", "im_loop",
              "re_counter", "im_counter", "re_total", "im_total"]

#: Probe carrier over gamma0 used when no medium constants are given.
DEFAULT_CARRIER = MediumConstants.sodium_d1().carrier_over_gamma0


class EdgePointError(SimulationError):
    """Group index requested at (or beyond) the edge of the grid."""


class NonUniformGridError(SimulationError):
    """Local grid spacing too uneven for a central difference."""


@dataclass(frozen=True)
class Spectrum:
    """Per-channel complex response over a detuning grid.

    loop_scatter and counter are the complex amplitudes of the e^{i*delta*t}
    and e^{2i*delta*t} lines of the probe-frame response, evaluated with the
    constant part of the loop phase (t = 0); at resonance they are simply
    the stationary channel values.  total_at_resonance is filled only where
    the multiphoton detuning vanishes and is NaN elsewhere.
    """

    axis_name: str
    grid: np.ndarray
    delta: np.ndarray
    direct: np.ndarray
    loop_scatter: np.ndarray
    counter: np.ndarray
    total_at_resonance: np.ndarray

    def channel(self, name):
        """One of the four stored channels by short name."""
        if name not in CHANNELS:
            raise ValueError(f"unknown channel {name!r}; expected one of {CHANNELS}")
        return {"direct": self.direct, "loop": self.loop_scatter,
                "counter": self.counter, "total": self.total_at_resonance}[name]


@dataclass(frozen=True)
class GroupIndexResult:
    """Group index and classification at one grid point."""

    n_g: float
    v_g_over_c: float
    dispersion_slope: float
    chi_prime: float
    chi_double_prime: float
    classification: str
    gain_flag: bool


def _point_params(p: SystemParams, axis: str, x: float) -> SystemParams:
    if axis == "raman_delta12":
        return replace(p, d31=float(x), d41=float(x))
    return replace(p, d41=float(x))


def sweep(p: SystemParams, axis: str, grid, mode: str = "steady_if_resonant") -> Spectrum:
    """Solve the response channel by channel over a detuning grid.

    Every point gets a Floquet solve for the three channels.  Where the
    multiphoton detuning vanishes the total is filled in as well: from a
    full steady-state solve in mode "steady_if_resonant" (exact in the probe
    amplitude), or as the plain sum of the three first-order channels in
    mode "floquet_direct".
    """
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {AXES}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2:
        raise ValueError("grid must be one-dimensional with at least 2 points")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")

    n = len(grid)
    delta = np.empty(n)
    direct = np.empty(n, dtype=complex)
    loop_amp = np.empty(n, dtype=complex)
    counter = np.empty(n, dtype=complex)
    total = np.full(n, np.nan + 1j * np.nan, dtype=complex)

    for i, x in enumerate(grid):
        pt = _point_params(p, axis, x)
        try:
            parts = build_liouvillian(pt)
            lp = loop_params(pt)
            sol = solve_floquet(parts, lp)
            comps = assemble_components(sol, parts, lp, t=0.0)
            delta[i] = lp.delta
            direct[i] = comps.direct
            loop_amp[i] = comps.loop_scatter
            counter[i] = comps.counter
            if abs(lp.delta) <= RESONANCE_TOL:
                if mode == "steady_if_resonant":
                    steady = solve_steady(parts, lp)
                    total[i] = probe_frame(steady.rho41, lp, 0.0)
                else:
                    total[i] = comps.total
        except SimulationError as err:
            err.args = (f"at {axis} = {x:g}: {err}",)
            raise
    return Spectrum(axis_name=axis, grid=grid, delta=delta, direct=direct,
                    loop_scatter=loop_amp, counter=counter,
                    total_at_resonance=total)


def group_index(spectrum: Spectrum, at: float, component: str = "direct",
                medium: MediumConstants | None = None,
                carrier: float | None = None) -> GroupIndexResult:
    """Group index from the local dispersion slope at one grid point.

    The slope is a central difference over the immediate neighbours of the
    grid point closest to `at`, which must lie strictly inside the grid on
    locally uniform spacing.  `carrier` overrides omega_p/gamma0; by default
    it comes from the medium constants (sodium D1 when medium is None).
    """
    grid = spectrum.grid
    i = int(np.argmin(np.abs(grid - at)))
    if i == 0 or i == len(grid) - 1:
        raise EdgePointError(
            f"{at:g} maps to the grid edge; central difference needs interior points")
    h_left = grid[i] - grid[i - 1]
    h_right = grid[i + 1] - grid[i]
    h_mean = 0.5 * (h_left + h_right)
    if abs(h_right - h_left) > 0.01 * h_mean:
        raise NonUniformGridError(
            f"grid spacing varies by more than 1% around {grid[i]:g}")

    values = spectrum.channel(component)
    stencil = values[i - 1:i + 2]
    if np.any(np.isnan(stencil)):
        raise ValueError(
            f"channel {component!r} is empty around {grid[i]:g} "
            "(total is only defined on multiphoton resonance)")
    chi = np.array([susceptibility(v, medium) for v in stencil])
    slope = (chi[2].real - chi[0].real) / (h_left + h_right)
    chi_prime = chi[1].real
    chi_double_prime = chi[1].imag
    if carrier is None:
        carrier = medium.carrier_over_gamma0 if medium is not None else DEFAULT_CARRIER

    n_g = 1.0 + 2.0 * np.pi * chi_prime + 2.0 * np.pi * carrier * slope
    if n_g > 1.0:
        classification = "subluminal"
    elif n_g > 0.0:
        classification = "superluminal_positive"
    else:
        classification = "superluminal_negative"
    v_g_over_c = 1.0 / n_g if n_g != 0.0 else math.inf
    return GroupIndexResult(
        n_g=float(n_g), v_g_over_c=float(v_g_over_c),
        dispersion_slope=float(slope), chi_prime=float(chi_prime),
        chi_double_prime=float(chi_double_prime),
        classification=classification, gain_flag=bool(chi_double_prime < 0.0))


# ---------------------------------------------------------------------------
# CSV dialect
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_spectrum_csv(spectrum: Spectrum, stream, header_lines=()) -> None:
    """Write a spectrum in the interchange dialect.

    One row per grid point with 17-significant-digit decimals, line-feed
    terminators, and empty total columns off multiphoton resonance.  Any
    `header_lines` are emitted first as '# '-prefixed comments, so the data
    header row is always the first uncommented line.
    """
    for line in header_lines:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i in range(len(spectrum.grid)):
        row = [_fmt(spectrum.grid[i]), _fmt(spectrum.delta[i])]
        for value in (spectrum.direct[i], spectrum.loop_scatter[i], spectrum.counter[i]):
            row += [_fmt(value.real), _fmt(value.imag)]
        total = spectrum.total_at_resonance[i]
        if abs(spectrum.delta[i]) <= RESONANCE_TOL and not np.isnan(total.real):
            row += [_fmt(total.real), _fmt(total.imag)]
        else:
            row += ["", ""]
        writer.writerow(row)


def read_spectrum_csv(stream, axis_name: str | None = None) -> Spectrum:
    """Read a spectrum written by write_spectrum_csv (comments skipped).

    The dialect does not store the axis name; pass it explicitly, or leave
    None to infer it (a sweep with vanishing multiphoton detuning everywhere
    is taken to be a raman sweep).
    """
    rows = [r for r in csv.reader(line for line in stream
                                  if not line.startswith("#")) if r]
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError("not a spectrum file: missing or wrong header row")
    data = rows[1:]
    if not data:
        raise ValueError("spectrum file has no data rows")
    n = len(data)
    grid = np.empty(n)
    delta = np.empty(n)
    cols = {name: np.empty(n, dtype=complex) for name in ("direct", "loop", "counter", "total")}
    for i, row in enumerate(data):
        grid[i] = float(row[0])
        delta[i] = float(row[1])
        cols["direct"][i] = float(row[2]) + 1j * float(row[3])
        cols["loop"][i] = float(row[4]) + 1j * float(row[5])
        cols["counter"][i] = float(row[6]) + 1j * float(row[7])
        if row[8] == "":
            cols["total"][i] = np.nan + 1j * np.nan
        else:
            cols["total"][i] = float(row[8]) + 1j * float(row[9])
    if axis_name is None:
        on_resonance = np.all(np.abs(delta) <= RESONANCE_TOL)
        axis_name = "raman_delta12" if on_resonance else "probe_delta41"
    return Spectrum(axis_name=axis_name, grid=grid, delta=delta, direct=cols["direct"],
                    loop_scatter=cols["loop"], counter=cols["counter"],
                    total_at_resonance=cols["total"])
