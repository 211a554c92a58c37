"""Built-in sweep scenarios, addressable by figure id.

Each preset pins a full parameter set, a sweep axis, a uniform grid, and the
channel of interest, so a scenario can be regenerated bit-for-bit from its id
alone.  Ids follow a fig<N><letter> scheme; the bare fig<N> resolves to every
panel of that group.  All rates are in units of the common decay rate gamma0
and every excited-state branch uses gamma_ji = 0.5 (total width gamma0 per
excited level) unless noted.

Grids are chosen so the evaluation points the analyses need (channel values
and dispersion slopes at named detunings) fall exactly on grid nodes:
  * steps of 0.004 on [-4, 4]   -> 0, +/-1, +/-2, +/-3 are nodes
  * steps of 0.005 on [-5, 5]   -> 0.5 and +/-2 are nodes
  * steps of 0.00625 on [-8, 4.5] -> -5 and +4 are nodes
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import SystemParams
from .spectra import AXES, CHANNELS, MODES, Spectrum, sweep

HALF_PI = math.pi / 2.0


class UnknownFigureError(KeyError):
    """Figure id not in the catalogue."""


@dataclass(frozen=True)
class FigurePreset:
    """Everything needed to regenerate one catalogued sweep."""

    figure_id: str
    params: SystemParams
    axis: str
    grid_start: float
    grid_stop: float
    grid_points: int
    channel: str
    mode: str = "steady_if_resonant"
    note: str = ""

    def __post_init__(self):
        assert self.axis in AXES and self.channel in CHANNELS and self.mode in MODES

    def grid(self) -> np.ndarray:
        return np.linspace(self.grid_start, self.grid_stop, self.grid_points)

    def run(self) -> Spectrum:
        return sweep(self.params, self.axis, self.grid(), self.mode)


def _p(**kw) -> SystemParams:
    base = dict(g31=0.6, g32=0.6, g42=0.6, g41=0.01,
                d31=0.0, d32=0.0, d42=0.0, d41=0.0,
                gamma13=0.5, gamma14=0.5, gamma23=0.5, gamma24=0.5,
                gamma12_deph=0.0, phi0=0.0, kr=0.0)
    base.update(kw)
    return SystemParams(**base)


_SYMMETRIC = dict(axis="raman_delta12", grid_start=-4.0, grid_stop=4.0,
                  grid_points=2001)

PRESETS = {p.figure_id: p for p in (
    # Full steady-state probe response on multiphoton resonance versus the
    # lower-state two-photon detuning, at three loop phases.
    FigurePreset("fig3a", _p(phi0=0.0), channel="total", **_SYMMETRIC),
    FigurePreset("fig3b", _p(phi0=math.pi), channel="total", **_SYMMETRIC),
    FigurePreset("fig3c", _p(phi0=HALF_PI), channel="total", **_SYMMETRIC),
    # The direct channel alone over the same sweep (loop-phase independent).
    FigurePreset("fig4", _p(), channel="direct", **_SYMMETRIC),
    # The counter-rotating channel; its loop-phase factor exp(-2i*phi0) makes
    # phi0 = 0 and phi0 = pi coincide and phi0 = pi/2 flip the sign.
    FigurePreset("fig5a", _p(phi0=0.0), channel="counter", **_SYMMETRIC,
                 note="identical at phi0 = pi"),
    FigurePreset("fig5b", _p(phi0=HALF_PI), channel="counter", **_SYMMETRIC),
    # Probe-detuning sweeps with asymmetric couplings: a steep normal-
    # dispersion window (a) and a detuned-coupling variant (b).
    FigurePreset("fig6a", _p(g31=1.8, g32=0.2, g42=0.5),
                 axis="probe_delta41", grid_start=-5.0, grid_stop=5.0,
                 grid_points=2001, channel="direct"),
    FigurePreset("fig6b", _p(g31=0.1, g32=0.1, g42=0.5, d31=10.0),
                 axis="probe_delta41", grid_start=-3.0, grid_stop=3.0,
                 grid_points=2001, channel="direct"),
    # One coupling switched off (g32 = 0): the loop is broken and only the
    # direct channel survives.  Scanning g31 moves the response through
    # subluminal and superluminal regimes.
    FigurePreset("fig7a", _p(g31=0.7, g32=0.0, g42=0.2),
                 axis="probe_delta41", grid_start=-4.0, grid_stop=4.0,
                 grid_points=2001, channel="direct"),
    FigurePreset("fig7b", _p(g31=0.85, g32=0.0, g42=0.2),
                 axis="probe_delta41", grid_start=-4.0, grid_stop=4.0,
                 grid_points=2001, channel="direct"),
    FigurePreset("fig7c", _p(g31=1.5, g32=0.0, g42=0.2),
                 axis="probe_delta41", grid_start=-4.0, grid_stop=4.0,
                 grid_points=2001, channel="direct"),
    # Same broken-loop system with the |4>-side coupling detuned by -5, which
    # shifts the feature of interest to d41 = -5 and adds gain there.
    FigurePreset("fig8a", _p(g31=0.7, g32=0.0, g42=0.6, d42=-5.0),
                 axis="probe_delta41", grid_start=-8.0, grid_stop=4.5,
                 grid_points=2001, channel="direct"),
    FigurePreset("fig8b", _p(g31=0.85, g32=0.0, g42=0.6, d42=-5.0),
                 axis="probe_delta41", grid_start=-8.0, grid_stop=4.5,
                 grid_points=2001, channel="direct"),
    FigurePreset("fig8c", _p(g31=1.5, g32=0.0, g42=0.6, d42=-5.0),
                 axis="probe_delta41", grid_start=-8.0, grid_stop=4.5,
                 grid_points=2001, channel="direct"),
)}

GROUPS = {
    "fig3": ("fig3a", "fig3b", "fig3c"),
    "fig4": ("fig4",),
    "fig5": ("fig5a", "fig5b"),
    "fig6": ("fig6a", "fig6b"),
    "fig7": ("fig7a", "fig7b", "fig7c"),
    "fig8": ("fig8a", "fig8b", "fig8c"),
}


def resolve(figure_id: str) -> tuple[FigurePreset, ...]:
    """Presets for a figure id: one for a panel id, all panels for a group id."""
    if figure_id in PRESETS:
        return (PRESETS[figure_id],)
    if figure_id in GROUPS:
        return tuple(PRESETS[name] for name in GROUPS[figure_id])
    known = ", ".join(list(GROUPS) + list(PRESETS))
    raise UnknownFigureError(f"unknown figure id {figure_id!r}; known ids: {known}")


def list_figures() -> tuple[str, ...]:
    return tuple(PRESETS)
