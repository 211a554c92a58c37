"""First-order Floquet treatment of the probe response off multiphoton resonance.

Off resonance the probe factor oscillates at the multiphoton detuning and no
time-independent steady state exists.  To first order in the weak probe the
long-time solution is a three-harmonic ansatz

    R(t) = r0 + gbar41*exp(-i*delta*t)*r1 + conj(gbar41)*exp(+i*delta*t)*rm1,

whose amplitudes solve three constant 15x15 systems.  The probe-frame
response splits into three scattering channels with distinct frequencies:

    rho41_hat(t) = loop_amplitude*e^{i*Phi} + direct + counter_amplitude*e^{2i*Phi}

with Phi = phi_of(t).  The loop channel (coupling fields scattered into the
probe mode) carries the phase dependence; the direct channel is always in
phase with the probe and independent of phi0 and kr; the counter channel sits
2*delta away from the probe frequency and depends on twice the loop phase.
"""

from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_LIGHT
from scipy.constants import epsilon_0, hbar

from .model import (LiouvillianParts, LoopParams, N_COMPONENTS, RHO41,
                    SimulationError, SingularSystemError)
from .steady import CONDITION_LIMIT


class ZeroProbeAmplitudeError(SimulationError):
    """SI susceptibility requested with a vanishing probe Rabi frequency."""


@dataclass(frozen=True)
class FloquetSolution:
    """Harmonic amplitudes of the truncated ansatz.

    r1 and rm1 are the per-unit-gbar41 amplitudes; they do not depend on the
    probe strength at all, only the reassembly multiplies gbar41 back in.
    """

    r0: np.ndarray
    r1: np.ndarray
    rm1: np.ndarray


@dataclass(frozen=True)
class ResponseComponents:
    """The probe-frame response at one instant, split by scattering channel.

    The stored amplitudes are time-independent; the full channel values
    follow the phase laws e^{i*Phi(t)} (loop) and e^{2i*Phi(t)} (counter)
    with Phi(t) = delta*t + kr - phi0, evaluated here at phi.
    """

    direct: complex
    loop_amplitude: complex
    counter_amplitude: complex
    phi: float

    @property
    def loop_scatter(self):
        """Loop channel including its phase factor at the assembly time."""
        return self.loop_amplitude * np.exp(1j * self.phi)

    @property
    def counter(self):
        """Counter-rotating channel including its phase factor."""
        return self.counter_amplitude * np.exp(2j * self.phi)

    @property
    def total(self):
        """Sum of the three channels.

        A single time-independent number only at multiphoton resonance,
        where all three channels share the probe frequency.
        """
        return self.direct + self.loop_scatter + self.counter


def _solve(m, rhs, label):
    cond = float(np.linalg.cond(m))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystemError(
            f"harmonic system {label} is singular (condition number {cond:.3g})")
    return np.linalg.solve(m, rhs)


def solve_floquet(parts: LiouvillianParts, loop: LoopParams) -> FloquetSolution:
    """Solve the three harmonic systems of the first-order ansatz.

    r0 solves m0@r0 = s0 (no probe at all); the sidebands solve

        (m0 + i*delta*I)@r1  = s1  - m1@r0
        (m0 - i*delta*I)@rm1 = sm1 - mm1@r0

    where the detuning shift is a scalar times the identity.  Valid for any
    delta, including 0 (where the assembled sum agrees with solve_steady to
    first order in the probe).
    """
    delta = loop.delta
    eye = np.eye(N_COMPONENTS)
    r0 = _solve(parts.m0, parts.s0, "r0")
    r1 = _solve(parts.m0 + 1j * delta * eye, parts.s1 - parts.m1 @ r0, "r1")
    rm1 = _solve(parts.m0 - 1j * delta * eye, parts.sm1 - parts.mm1 @ r0, "rm1")
    return FloquetSolution(r0=r0, r1=r1, rm1=rm1)


def assemble_components(sol: FloquetSolution, parts: LiouvillianParts,
                        loop: LoopParams, t: float) -> ResponseComponents:
    """Combine the harmonic amplitudes into the three probe-frame channels.

    direct = g41*[r1]_13 (phase-free), loop = [r0]_13*e^{i*Phi(t)},
    counter = conj(g41)*[rm1]_13*e^{2i*Phi(t)}.
    """
    g41 = parts.gbar41 * np.exp(-1j * (loop.phi0 - loop.kr))
    return ResponseComponents(
        direct=complex(g41 * sol.r1[RHO41]),
        loop_amplitude=complex(sol.r0[RHO41]),
        counter_amplitude=complex(np.conj(g41) * sol.rm1[RHO41]),
        phi=loop.phi_of(t))


# ---------------------------------------------------------------------------
# Susceptibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MediumConstants:
    """SI constants linking the dimensionless response to a real vapor.

    gamma0 is the reference decay rate in rad/s; dipole the probe-transition
    dipole moment in C*m; density the atom number density in m^-3;
    wavelength the probe carrier in m; probe_g41 the probe Rabi frequency in
    units of gamma0.
    """

    gamma0: float
    dipole: float
    density: float
    wavelength: float
    probe_g41: float

    @classmethod
    def sodium_d1(cls, probe_g41: float = 0.01):
        """Sodium D1 vapor example: the prefactor comes out close to 1."""
        return cls(gamma0=2.0 * np.pi * 9.76e6, dipole=2.1e-29,
                   density=1.3e18, wavelength=589.6e-9, probe_g41=probe_g41)

    @property
    def probe_rabi_si(self):
        """Probe Rabi frequency in rad/s."""
        return self.probe_g41 * self.gamma0

    @property
    def carrier_over_gamma0(self):
        """Probe carrier frequency omega_p in units of gamma0."""
        return (2.0 * np.pi * C_LIGHT / self.wavelength) / self.gamma0

    @property
    def prefactor(self):
        """chi = prefactor * rho41_hat.

        Writing the probe field amplitude through the Rabi frequency,
        E41 = 2*hbar*Omega/d41, the linear-response prefactor
        2*N*d41/(epsilon_0*E41) reduces to N*d41^2/(epsilon_0*hbar*Omega).
        """
        if self.probe_rabi_si == 0.0:
            raise ZeroProbeAmplitudeError(
                "susceptibility prefactor diverges at zero probe amplitude")
        return self.density * self.dipole ** 2 / (epsilon_0 * hbar * self.probe_rabi_si)


def susceptibility(component: complex, medium: MediumConstants | None = None) -> complex:
    """Linear susceptibility of one response channel.

    With medium=None the dimensionless convention chi = rho41_hat applies
    (the sodium D1 prefactor is close to 1, which is what makes that
    convention useful).  With medium constants supplied the SI prefactor is
    applied instead.
    """
    if medium is None:
        return complex(component)
    return complex(medium.prefactor * component)
