"""Time-independent steady state at multiphoton resonance.

When the multiphoton detuning vanishes the probe factor a(t) =
gbar41*exp(-i*delta*t) is the constant gbar41 and the equations of motion
have constant coefficients, so the long-time state solves a single 15x15
linear system.  Away from resonance no time-independent steady state exists
and the Floquet treatment in `floquet` applies instead.
"""

from dataclasses import dataclass

import numpy as np

from .model import (LiouvillianParts, LoopParams, RHO41, SimulationError,
                    SingularSystemError, SystemParams)

#: |delta| below which the system counts as multiphoton resonant.
RESONANCE_TOL = 1e-12

#: Condition number above which a solve is treated as singular.
CONDITION_LIMIT = 1e12

RESIDUAL_TOL = 1e-10


class NotMultiphotonResonantError(SimulationError):
    """solve_steady called with a nonzero multiphoton detuning."""


class PreconditionViolatedError(SimulationError):
    """Closed-form evaluation requested outside its validity domain."""


@dataclass(frozen=True)
class SteadyState:
    """Solution of the resonant linear system plus its conditioning."""

    r: np.ndarray
    condition_number: float

    @property
    def rho41(self):
        """Interaction-frame probe coherence (13th component)."""
        return self.r[RHO41]


def solve_steady(parts: LiouvillianParts, loop: LoopParams) -> SteadyState:
    """Solve (m0 + gbar41*m1 + conj(gbar41)*mm1) r = s0 + gbar41*s1 + conj(gbar41)*sm1.

    Valid only at multiphoton resonance, where the loop phase is constant and
    already folded into gbar41.  The solution is exact in the probe amplitude
    (not a weak-probe expansion).  Uses dense LU with partial pivoting;
    conditioning is reported on the returned state rather than regularized.
    """
    if abs(loop.delta) > RESONANCE_TOL:
        raise NotMultiphotonResonantError(
            f"delta = {loop.delta:g} exceeds {RESONANCE_TOL:g}; "
            "no time-independent steady state exists off multiphoton resonance")
    m, s = parts.resonant()
    cond = float(np.linalg.cond(m))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystemError(
            f"steady-state system is singular (condition number {cond:.3g}); "
            "with all fields off the lower-state distribution is not unique")
    r = np.linalg.solve(m, s)
    residual = float(np.max(np.abs(m @ r - s)))
    if residual > RESIDUAL_TOL:
        raise SingularSystemError(
            f"steady-state residual {residual:.3g} exceeds {RESIDUAL_TOL:g}")
    return SteadyState(r=r, condition_number=cond)


def analytic_rho41(p: SystemParams):
    """Closed-form leading-order probe coherence for the symmetric case.

    Valid when all four detunings vanish, all four decay rates equal a
    common gamma, and the coupling amplitudes are real (field phases folded
    into phi0).  Returns (rho41_tilde, rho41_hat): the interaction-frame
    value and the probe-frame value exp(i*phi_of(0))*rho41_tilde.

    The three terms are, in order: scattering of the three coupling fields
    into the probe mode (independent of g41), direct probe scattering
    (proportional to gbar41), and a counter-rotating contribution
    (proportional to conj(gbar41)).  With

        D = |g31|^2|g42|^2 + gamma^2(|g31|^2+|g32|^2+|g42|^2)

    the expansion reads

        rho41_tilde = -i*gamma*conj(g32)*g31*g42 / (2D)
                      + i*gamma^3*(|g31|^2+|g32|^2+|g42|^2)*|g32|^2*gbar41 / (2D^2)
                      - i*gamma*|g31|^2|g32|^2|g42|^2*conj(gbar41) / (2D^2).

    Every term carries a g32 factor, so breaking the loop (g32 = 0) gives
    exactly zero at this order.
    """
    gamma = p.gamma13
    for name in ("gamma14", "gamma23", "gamma24"):
        if abs(getattr(p, name) - gamma) > 1e-12:
            raise PreconditionViolatedError(
                f"closed form needs equal decay rates; {name} != gamma13")
    for name in ("d31", "d32", "d42", "d41"):
        if abs(getattr(p, name)) > 1e-12:
            raise PreconditionViolatedError(
                f"closed form needs all detunings zero; {name} = {getattr(p, name):g}")
    for name in ("g31", "g32", "g42"):
        if abs(complex(getattr(p, name)).imag) > 1e-12:
            # With a complex coupling the counter-rotating coefficient picks
            # up twice the coupling-product phase that this expression drops,
            # and the residual degrades from O(g41^2) to O(g41).  The family
            # this expansion belongs to keeps coupling amplitudes real and
            # pushes all field phases into phi0.
            raise PreconditionViolatedError(
                f"closed form needs real coupling amplitudes; {name} is complex")
    if gamma <= 0.0:
        raise PreconditionViolatedError("closed form needs gamma > 0")

    a31 = abs(p.g31) ** 2
    a32 = abs(p.g32) ** 2
    a42 = abs(p.g42) ** 2
    total = a31 + a32 + a42
    d = a31 * a42 + gamma ** 2 * total
    if d == 0.0:
        raise PreconditionViolatedError("all coupling fields are off")
    gbar = p.gbar41
    tilde = (-1j * gamma * np.conj(p.g32) * p.g31 * p.g42 / (2.0 * d)
             + 1j * gamma ** 3 * total * a32 * gbar / (2.0 * d ** 2)
             - 1j * gamma * a31 * a32 * a42 * np.conj(gbar) / (2.0 * d ** 2))
    hat = tilde * np.exp(1j * (p.kr - p.phi0))
    return complex(tilde), complex(hat)


def probe_frame(rho41_tilde: complex, loop: LoopParams, t: float) -> complex:
    """Rotate an interaction-frame coherence into the probe frame at time t."""
    return rho41_tilde * np.exp(1j * loop.phi_of(t))
