"""Light propagation through a four-level double-Lambda medium driven by a
closed loop of laser fields.

The package computes the weak-probe response of the medium — steady state on
multiphoton resonance, first-order harmonic (Floquet) decomposition off it —
and derives the probe susceptibility, group index, and sub-/superluminal
classification, with CSV sweeps and a self-checking figure catalogue on top.

Typical flow:

    >>> from lambdaloop import SystemParams, build_liouvillian, loop_params
    >>> from lambdaloop import solve_steady, probe_frame
    >>> p = SystemParams(g31=0.6, g32=0.6, g42=0.6, g41=0.01)
    >>> state = solve_steady(build_liouvillian(p), loop_params(p))
    >>> probe_frame(state.rho41, loop_params(p), t=0.0)  # doctest: +SKIP
"""

from .dynamics import (DeltaZeroError, Trajectory, UnphysicalStateError,
                       WindowTooShortError, demodulate, harmonic_window,
                       integrate)
from .floquet import (FloquetSolution, MediumConstants, ResponseComponents,
                      ZeroProbeAmplitudeError, assemble_components,
                      solve_floquet, susceptibility)
from .model import (COMPONENTS, IDX, RHO41, AllDecayZeroError, LiouvillianParts,
                    LoopParams, NegativeDecayError, SimulationError,
                    SingularSystemError, SystemParams, build_liouvillian,
                    ground_state, loop_params, matrix_to_rvector,
                    physical_state_violation, rvector_to_matrix,
                    validate_params)
from .presets import (GROUPS, PRESETS, FigurePreset, UnknownFigureError,
                      list_figures, resolve)
from .spectra import (EdgePointError, GroupIndexResult, NonUniformGridError,
                      Spectrum, group_index, read_spectrum_csv, sweep,
                      write_spectrum_csv)
from .steady import (NotMultiphotonResonantError, PreconditionViolatedError,
                     SteadyState, analytic_rho41, probe_frame, solve_steady)

__version__ = "0.1.0"

__all__ = [
    "AllDecayZeroError", "COMPONENTS", "DeltaZeroError", "EdgePointError",
    "FigurePreset", "FloquetSolution", "GROUPS", "GroupIndexResult", "IDX",
    "LiouvillianParts", "LoopParams", "MediumConstants",
    "NegativeDecayError", "NonUniformGridError", "NotMultiphotonResonantError",
    "PRESETS", "PreconditionViolatedError", "RHO41", "ResponseComponents",
    "SimulationError", "SingularSystemError", "Spectrum", "SteadyState",
    "SystemParams", "Trajectory", "UnknownFigureError", "UnphysicalStateError",
    "WindowTooShortError", "ZeroProbeAmplitudeError", "analytic_rho41",
    "assemble_components", "build_liouvillian", "demodulate", "ground_state",
    "group_index", "harmonic_window", "integrate", "list_figures",
    "loop_params", "matrix_to_rvector", "physical_state_violation",
    "probe_frame", "read_spectrum_csv", "resolve", "rvector_to_matrix",
    "solve_floquet", "solve_steady", "susceptibility", "sweep",
    "validate_params", "write_spectrum_csv",
]
