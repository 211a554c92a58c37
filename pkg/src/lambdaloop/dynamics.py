"""Brute-force time integration of the full equations of motion.

This module is the oracle for everything else: it integrates
dR/dt = M(t)@R - S(t) with a fixed-step classical Runge-Kutta scheme and
extracts harmonic amplitudes by demodulating the probe coherence over an
integer number of oscillation periods.  Fixed steps keep the demodulation
grid exact; the quadrature over whole periods then recovers pure harmonics
to machine precision instead of suffering spectral leakage.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import (CONJUGATE_PAIRS, LiouvillianParts, LoopParams,
                    N_COMPONENTS, RHO41, SimulationError, ground_state,
                    physical_state_violation)

#: Default integration step in units of 1/gamma0.
DEFAULT_DT = 0.01

#: Default settling time before demodulation windows open.
DEFAULT_SETTLE = 50.0

MIN_PERIODS = 10

STATE_TOL = 1e-6


class UnphysicalStateError(SimulationError):
    """A trajectory state broke the physical-state invariants (step too large)."""


class WindowTooShortError(SimulationError):
    """Demodulation window spans fewer than the minimum number of periods."""


class DeltaZeroError(SimulationError):
    """Demodulation at delta = 0, where the harmonics are indistinguishable."""


@dataclass(frozen=True)
class Trajectory:
    """Integration output: uniform time grid and the state at every step."""

    times: np.ndarray
    states: np.ndarray  # shape (len(times), 15), complex


def integrate(parts: LiouvillianParts, loop: LoopParams, r_init=None,
              t_end: float = 100.0, dt_max: float = DEFAULT_DT,
              check: bool = True) -> Trajectory:
    """Fixed-step 4th-order Runge-Kutta integration of dR/dt = M(t)R - S(t).

    The step is t_end/N with N chosen so the step never exceeds dt_max; the
    caller is responsible for keeping dt_max below ~0.1 divided by the
    fastest rate (decay, detuning or Rabi frequency), otherwise the scheme
    goes unstable and the physical-state check fires.  r_init defaults to
    all population in |1>.

    With check=True every stored state is validated against the
    physical-state invariants (Hermiticity, population bounds, coherence
    bounds) to within 1e-6.
    """
    if r_init is None:
        r_init = ground_state()
    r = np.asarray(r_init, dtype=complex).copy()
    if check:
        violation = physical_state_violation(r)
        if violation > STATE_TOL:
            raise UnphysicalStateError(
                f"initial state violates physical invariants by {violation:.3g}")
    if t_end <= 0.0 or dt_max <= 0.0:
        raise ValueError("t_end and dt_max must be positive")

    n_steps = max(1, math.ceil(t_end / dt_max - 1e-9))
    dt = t_end / n_steps
    times = np.arange(n_steps + 1) * dt
    states = np.empty((n_steps + 1, N_COMPONENTS), dtype=complex)
    states[0] = r

    # Stack the three harmonic blocks so each derivative costs one matvec.
    blocks = np.vstack([parts.m0, parts.m1, parts.mm1])
    s0, s1, sm1 = parts.s0, parts.s1, parts.sm1
    gbar = parts.gbar41
    delta = loop.delta

    def rhs(t, state):
        stacked = blocks @ state
        a = gbar * np.exp(-1j * delta * t)
        return ((stacked[:N_COMPONENTS] - s0)
                + a * (stacked[N_COMPONENTS:2 * N_COMPONENTS] - s1)
                + np.conj(a) * (stacked[2 * N_COMPONENTS:] - sm1))

    half = 0.5 * dt
    for k in range(n_steps):
        t = times[k]
        k1 = rhs(t, r)
        k2 = rhs(t + half, r + half * k1)
        k3 = rhs(t + half, r + half * k2)
        k4 = rhs(t + dt, r + dt * k3)
        r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[k + 1] = r

    if check:
        _check_states(times, states)
    states.setflags(write=False)
    times.setflags(write=False)
    return Trajectory(times=times, states=states)


def _check_states(times, states):
    """Vectorized physical-state validation over a whole trajectory."""
    pops = np.stack([states[:, 0], states[:, 5], states[:, 10]], axis=1)
    rho44 = 1.0 - pops.sum(axis=1)
    all_pops = np.column_stack([pops, rho44])
    worst = float(np.max(np.abs(all_pops.imag)))
    worst = max(worst, float(np.max(np.maximum(-all_pops.real, all_pops.real - 1.0))))
    for k, l in CONJUGATE_PAIRS:
        worst = max(worst, float(np.max(np.abs(states[:, k] - np.conj(states[:, l])))))
    if worst > STATE_TOL:
        bad = np.argmax(np.abs(all_pops.imag).max(axis=1)
                        + np.maximum(-all_pops.real, all_pops.real - 1.0).max(axis=1))
        raise UnphysicalStateError(
            f"trajectory violates physical invariants by {worst:.3g} "
            f"(first around t = {times[min(bad, len(times) - 1)]:.3g}); "
            "reduce dt_max")


def demodulate(traj: Trajectory, loop: LoopParams, window):
    """Project the probe coherence onto its three Floquet harmonics.

    window = (t_a, t_b).  t_b is snapped down so the window covers a whole
    number n of periods 2*pi/|delta|; the trapezoid rule over whole periods
    on a uniform grid is then an exact discrete Fourier projection.  Returns
    (a0, a_plus, a_minus): the amplitudes of the constant part and of the
    exp(-i*delta*t) / exp(+i*delta*t) lines of the 13th component, directly
    comparable to ([r0]_13, gbar41*[r1]_13, conj(gbar41)*[rm1]_13).

    The trajectory step must subdivide the period (see harmonic_window);
    transients must have decayed by t_a, which is the caller's
    responsibility (t_a of at least 50/gamma0 is a reasonable floor, slower
    configurations need more).
    """
    delta = loop.delta
    if abs(delta) <= 1e-12:
        raise DeltaZeroError(
            "harmonics are indistinguishable at delta = 0; use solve_steady")
    t_a, t_b = window
    period = 2.0 * np.pi / abs(delta)
    times = traj.times
    dt = times[1] - times[0]

    steps_per_period = period / dt
    rounded = round(steps_per_period)
    if rounded < 2 or abs(steps_per_period - rounded) > 1e-6 * steps_per_period:
        raise ValueError(
            f"time step {dt:.3g} does not subdivide the period {period:.3g}; "
            "integrate on a period-aligned grid (harmonic_window)")

    if t_a < times[0] - 1e-9 or t_b > times[-1] + 1e-9:
        raise WindowTooShortError("window extends beyond the trajectory")
    i_a = int(np.searchsorted(times, t_a - 0.5 * dt))
    n_periods = int(math.floor((min(t_b, times[-1]) - times[i_a]) / period + 1e-9))
    if n_periods < MIN_PERIODS:
        raise WindowTooShortError(
            f"window covers {n_periods} periods; at least {MIN_PERIODS} required")
    i_b = i_a + n_periods * rounded

    t = times[i_a:i_b + 1]
    y = traj.states[i_a:i_b + 1, RHO41]
    weights = np.ones(len(t))
    weights[0] = weights[-1] = 0.5
    norm = len(t) - 1
    a0 = np.sum(weights * y) / norm
    a_plus = np.sum(weights * y * np.exp(+1j * delta * t)) / norm
    a_minus = np.sum(weights * y * np.exp(-1j * delta * t)) / norm
    return complex(a0), complex(a_plus), complex(a_minus)


def harmonic_window(loop: LoopParams, settle: float = DEFAULT_SETTLE,
                    periods: int = MIN_PERIODS, dt_target: float = DEFAULT_DT):
    """Plan a period-aligned integration for demodulation.

    Returns (t_end, dt_max, (t_a, t_b)) such that the step divides the
    period exactly, the settling stretch covers at least `settle`, and the
    demodulation window spans `periods` whole periods ending at t_end.
    """
    delta = loop.delta
    if abs(delta) <= 1e-12:
        raise DeltaZeroError("no oscillation period at delta = 0")
    if periods < MIN_PERIODS:
        raise WindowTooShortError(
            f"{periods} periods requested; at least {MIN_PERIODS} required")
    period = 2.0 * np.pi / abs(delta)
    dt = period / math.ceil(period / dt_target)
    settle_periods = math.ceil(settle / period)
    t_a = settle_periods * period
    t_b = t_a + periods * period
    return t_b, dt, (t_a, t_b)
