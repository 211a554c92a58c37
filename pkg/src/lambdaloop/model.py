"""Domain types and equations of motion for a driven four-level double-Lambda medium.

Level scheme: two lower states |1>, |2> and two excited states |3>, |4>.
Three coupling fields drive |1>-|3> (g31), |2>-|3> (g32) and |2>-|4> (g42);
a weak probe drives |1>-|4> (g41).  Together the four transitions form a
closed interaction loop, so no choice of rotating frame can remove all field
phases: the dynamics retain an explicit dependence on the multiphoton
detuning

    delta = (d32 + d41) - (d31 + d42)

and on the loop phase Phi(t) = delta*t + kr - phi0, where phi0 is the
relative initial phase of the four fields and kr the scalar wave-vector
mismatch projected on the observation point.  The probe enters the equations
of motion only through g41*exp(-i*Phi(t)), which this module keeps factored
as gbar41*exp(-i*delta*t) with gbar41 = g41*exp(i*(phi0 - kr)).

The density matrix is flattened to a 15-component vector R (rho44 is
eliminated through the unit trace) and the equations of motion are written

    dR/dt = M(t)@R - S(t),
    M(t) = M0 + gbar41*exp(-i*delta*t)*M1 + conj(gbar41)*exp(+i*delta*t)*Mm1,

with the same three-harmonic split for the inhomogeneous vector S(t).  All
rates and frequencies are expressed in units of a reference decay rate
gamma0; conversion to SI units happens only in the susceptibility prefactor
(see `floquet.MediumConstants`).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class SimulationError(Exception):
    """Base class for all solver and validation failures in this package."""


class NegativeDecayError(SimulationError):
    """A spontaneous decay rate was negative."""


class AllDecayZeroError(SimulationError):
    """No spontaneous decay channel at all: the dissipative model is void."""


class SingularSystemError(SimulationError):
    """A linear solve hit an (effectively) singular coefficient matrix."""


# ---------------------------------------------------------------------------
# Coherence-vector bookkeeping
# ---------------------------------------------------------------------------

#: Ordering of the 15 retained density-matrix elements.  rho44 is implicit
#: via the unit trace and reconstructed on demand.
COMPONENTS = ("11", "12", "13", "14",
              "21", "22", "23", "24",
              "31", "32", "33", "34",
              "41", "42", "43")

IDX = {name: k for k, name in enumerate(COMPONENTS)}

#: Slot of the probe coherence rho41 (the 13th component, counting from 1).
RHO41 = IDX["41"]

N_COMPONENTS = len(COMPONENTS)

#: Index pairs (k, l) such that component k is the complex conjugate of
#: component l when the vector represents a Hermitian matrix.
CONJUGATE_PAIRS = tuple(
    (IDX[a + b], IDX[b + a]) for a, b in
    (("1", "2"), ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4"))
)


def rvector_to_matrix(r):
    """Reshape a 15-component coherence vector into the full 4x4 matrix.

    rho44 is restored as 1 - rho11 - rho22 - rho33, so the result has unit
    trace by construction.
    """
    r = np.asarray(r)
    m = np.empty((4, 4), dtype=complex)
    for name, k in IDX.items():
        m[int(name[0]) - 1, int(name[1]) - 1] = r[k]
    m[3, 3] = 1.0 - r[IDX["11"]] - r[IDX["22"]] - r[IDX["33"]]
    return m


def matrix_to_rvector(m):
    """Flatten a 4x4 density matrix into the 15-component ordering."""
    m = np.asarray(m)
    r = np.empty(N_COMPONENTS, dtype=complex)
    for name, k in IDX.items():
        r[k] = m[int(name[0]) - 1, int(name[1]) - 1]
    return r


def ground_state():
    """Coherence vector with all population in |1> (the probe ground state)."""
    r = np.zeros(N_COMPONENTS, dtype=complex)
    r[IDX["11"]] = 1.0
    return r


def physical_state_violation(r):
    """Return the worst violation of the physical-state invariants of `r`.

    Checks Hermiticity (conjugate pairs), realness of the populations,
    populations within [0, 1], and the Cauchy-Schwarz bound
    |rho_ij|^2 <= rho_ii*rho_jj.  The return value is the largest excursion
    beyond exact validity (0 for a perfectly physical state); callers decide
    the acceptable tolerance.
    """
    r = np.asarray(r)
    m = rvector_to_matrix(r)
    worst = 0.0
    for k, l in CONJUGATE_PAIRS:
        worst = max(worst, abs(r[k] - np.conj(r[l])))
    pops = np.diag(m)
    worst = max(worst, float(np.max(np.abs(pops.imag))))
    worst = max(worst, float(np.max(np.maximum(-pops.real, pops.real - 1.0), initial=0.0)))
    for i in range(4):
        for j in range(i + 1, 4):
            excess = abs(m[i, j]) ** 2 - pops[i].real * pops[j].real
            worst = max(worst, excess)
    return worst


# ---------------------------------------------------------------------------
# Parameter containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SystemParams:
    """One physical configuration of the driven four-level system.

    Rabi frequencies are complex (field phases other than the loop phase are
    absorbed here), detunings and rates are real.  Everything is in units of
    the reference decay rate gamma0.

    gamma13/gamma14/gamma23/gamma24 are the HALF population decay rates of
    the two excited states into the two lower states (the full rate on each
    channel is 2*gamma_ji).  gamma12_deph is an extra pure dephasing rate of
    the lower-state coherence, normally 0.
    """

    g31: complex
    g32: complex
    g42: complex
    g41: complex
    d31: float = 0.0
    d32: float = 0.0
    d42: float = 0.0
    d41: float = 0.0
    gamma13: float = 0.5
    gamma14: float = 0.5
    gamma23: float = 0.5
    gamma24: float = 0.5
    gamma12_deph: float = 0.0
    phi0: float = 0.0
    kr: float = 0.0

    @property
    def gamma3(self):
        """Half total decay rate of |3> (sum over both lower states)."""
        return self.gamma13 + self.gamma23

    @property
    def gamma4(self):
        """Half total decay rate of |4>."""
        return self.gamma14 + self.gamma24

    @property
    def weak_probe_flag(self):
        """True when the probe is too strong for the weak-probe expansion.

        Set when |g41| exceeds 10% of the largest coupling Rabi frequency.
        Reported as a diagnostic, never enforced.
        """
        strongest = max(abs(self.g31), abs(self.g32), abs(self.g42))
        return abs(self.g41) > 0.1 * strongest

    @property
    def gbar41(self):
        """Probe amplitude with the constant loop phase folded in."""
        return complex(self.g41) * np.exp(1j * (self.phi0 - self.kr))


@dataclass(frozen=True)
class LoopParams:
    """Loop quantities derived from the four detunings and the field phases.

    `delta` is always recomputed from the stored detunings so it can never
    drift out of sync with them.  The loop phase is the affine function

        phi_of(t) = delta*t + kr - phi0.

    With this sign choice the probe term of the equations of motion is
    g41*exp(-i*phi_of(t)) and the probe-frame response exp(i*phi_of)*rho41
    has a direct channel independent of phi0 and kr.
    """

    d31: float
    d32: float
    d42: float
    d41: float
    phi0: float
    kr: float

    @property
    def delta(self):
        """Multiphoton detuning (d32 + d41) - (d31 + d42)."""
        return (self.d32 + self.d41) - (self.d31 + self.d42)

    def phi_of(self, t):
        """Loop phase at time t (radians)."""
        return self.delta * t + self.kr - self.phi0


@dataclass(frozen=True)
class LiouvillianParts:
    """Harmonic decomposition of the equations of motion.

    m0/s0 hold everything driven by the three coupling fields; m1/s1 and
    mm1/sm1 hold the probe terms per unit gbar41 and conj(gbar41).  The
    reconstruction at time t reads

        M(t) = m0 + a(t)*m1 + conj(a(t))*mm1,   a(t) = gbar41*exp(-i*delta*t)

    and the same for S(t).  Matrices are frozen read-only.
    """

    m0: np.ndarray
    m1: np.ndarray
    mm1: np.ndarray
    s0: np.ndarray
    s1: np.ndarray
    sm1: np.ndarray
    gbar41: complex = 0j

    def probe_factor(self, loop, t):
        """The complex factor a(t) multiplying the +1 harmonic at time t."""
        return self.gbar41 * np.exp(-1j * loop.delta * t)

    def at_time(self, loop, t):
        """Reassembled (M(t), S(t)) for direct integration and checks."""
        a = self.probe_factor(loop, t)
        m = self.m0 + a * self.m1 + np.conj(a) * self.mm1
        s = self.s0 + a * self.s1 + np.conj(a) * self.sm1
        return m, s

    def resonant(self):
        """(M, S) at multiphoton resonance, where a(t) is the constant gbar41."""
        g = self.gbar41
        m = self.m0 + g * self.m1 + np.conj(g) * self.mm1
        s = self.s0 + g * self.s1 + np.conj(g) * self.sm1
        return m, s


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def validate_params(raw: SystemParams) -> SystemParams:
    """Check the physical invariants of a parameter set and return it.

    Raises NegativeDecayError for a negative decay rate and
    AllDecayZeroError when both excited states are radiatively stable (the
    dissipative derivation of the equations of motion then has no content).
    Logs a warning when the weak-probe diagnostic flag is set.
    """
    rates = {
        "gamma13": raw.gamma13, "gamma14": raw.gamma14,
        "gamma23": raw.gamma23, "gamma24": raw.gamma24,
        "gamma12_deph": raw.gamma12_deph,
    }
    for name, value in rates.items():
        if not math.isfinite(value):
            raise NegativeDecayError(f"{name} = {value} is not finite")
        if value < 0.0:
            raise NegativeDecayError(f"{name} = {value} < 0")
    if raw.gamma3 <= 0.0 and raw.gamma4 <= 0.0:
        raise AllDecayZeroError("no spontaneous decay channel on |3> or |4>")
    for name in ("d31", "d32", "d42", "d41", "phi0", "kr"):
        if not math.isfinite(getattr(raw, name)):
            raise SimulationError(f"{name} is not finite")
    for name in ("g31", "g32", "g42", "g41"):
        z = complex(getattr(raw, name))
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise SimulationError(f"{name} is not finite")
    if raw.weak_probe_flag:
        logger.warning(
            "weak-probe diagnostic: |g41|=%.3g exceeds 10%% of the strongest "
            "coupling field; first-order probe results are unreliable",
            abs(raw.g41))
    return raw


def loop_params(p: SystemParams) -> LoopParams:
    """Derive the loop parameters (multiphoton detuning, loop phase) from p."""
    return LoopParams(d31=p.d31, d32=p.d32, d42=p.d42, d41=p.d41,
                      phi0=p.phi0, kr=p.kr)


def build_liouvillian(p: SystemParams) -> LiouvillianParts:
    """Assemble the harmonic-decomposed coefficient matrices from the
    equations of motion.

    Sign convention: dR/dt + S(t) = M(t)@R, i.e. dR/dt = M(t)@R - S(t).
    The constant terms produced by eliminating rho44 = 1 - rho11 - rho22
    - rho33 land in S with a minus sign.

    Only the probe couples the harmonics: every entry of m1/mm1/s1/sm1 is
    0, +-i or +-2i, and the probe amplitude is carried separately as
    gbar41 (so these four blocks are bitwise independent of g41).
    """
    n = N_COMPONENTS
    m0 = np.zeros((n, n), dtype=complex)
    m1 = np.zeros((n, n), dtype=complex)
    mm1 = np.zeros((n, n), dtype=complex)
    s0 = np.zeros(n, dtype=complex)
    s1 = np.zeros(n, dtype=complex)
    sm1 = np.zeros(n, dtype=complex)

    g31, g32, g42 = complex(p.g31), complex(p.g32), complex(p.g42)
    c31, c32, c42 = np.conj(g31), np.conj(g32), np.conj(g42)
    d31, d32, d42 = p.d31, p.d32, p.d42
    # coherence damping rates: Gamma_ij = gamma_i + gamma_j with
    # gamma_1 = gamma_2 = 0, gamma_3 = gamma13+gamma23, gamma_4 = gamma14+gamma24
    G12 = p.gamma12_deph
    G13 = G23 = p.gamma3
    G14 = G24 = p.gamma4
    G34 = p.gamma3 + p.gamma4

    def at(row, col, value, m=m0):
        m[IDX[row], IDX[col]] += value

    # --- populations -------------------------------------------------------
    # rho11: feeding from |3>,|4>; rho44 elimination adds -2*gamma14*(11+22+33)
    # and a constant 2*gamma14 that goes to s0 with opposite sign.
    at("11", "13", -1j * g31)
    at("11", "31", +1j * c31)
    at("11", "33", 2.0 * p.gamma13)
    for pop in ("11", "22", "33"):
        at("11", pop, -2.0 * p.gamma14)
    s0[IDX["11"]] = -2.0 * p.gamma14
    at("11", "14", -1j, m1)
    at("11", "41", +1j, mm1)

    # rho22
    at("22", "23", -1j * g32)
    at("22", "32", +1j * c32)
    at("22", "24", -1j * g42)
    at("22", "42", +1j * c42)
    at("22", "33", 2.0 * p.gamma23)
    for pop in ("11", "22", "33"):
        at("22", pop, -2.0 * p.gamma24)
    s0[IDX["22"]] = -2.0 * p.gamma24

    # rho33
    at("33", "13", +1j * g31)
    at("33", "31", -1j * c31)
    at("33", "23", +1j * g32)
    at("33", "32", -1j * c32)
    at("33", "33", -2.0 * p.gamma3)

    # --- lower-state coherence --------------------------------------------
    at("12", "12", 1j * (d32 - d31) - G12)
    at("12", "32", +1j * c31)
    at("12", "13", -1j * g32)
    at("12", "14", -1j * g42)
    at("12", "42", +1j, mm1)

    at("21", "21", -1j * (d32 - d31) - G12)
    at("21", "23", -1j * g31)
    at("21", "31", +1j * c32)
    at("21", "41", +1j * c42)
    at("21", "24", -1j, m1)

    # --- optical coherences on |3> ----------------------------------------
    at("13", "13", -1j * d31 - G13)
    at("13", "33", +1j * c31)
    at("13", "11", -1j * c31)
    at("13", "12", -1j * c32)
    at("13", "43", +1j, mm1)

    at("31", "31", +1j * d31 - G13)
    at("31", "33", -1j * g31)
    at("31", "11", +1j * g31)
    at("31", "21", +1j * g32)
    at("31", "34", -1j, m1)

    at("23", "23", -1j * d32 - G23)
    at("23", "33", +1j * c32)
    at("23", "22", -1j * c32)
    at("23", "21", -1j * c31)
    at("23", "43", +1j * c42)

    at("32", "32", +1j * d32 - G23)
    at("32", "33", -1j * g32)
    at("32", "22", +1j * g32)
    at("32", "12", +1j * g31)
    at("32", "34", -1j * g42)

    # --- optical coherences on |4> ----------------------------------------
    # rho24 couples to rho44 - rho22; the elimination spreads -i*c42 over all
    # three populations and leaves the constant -i*c42 in s0.
    at("24", "24", -1j * d42 - G24)
    at("24", "22", -1j * c42)
    for pop in ("11", "22", "33"):
        at("24", pop, -1j * c42)
    s0[IDX["24"]] = -1j * c42
    at("24", "34", +1j * c32)
    at("24", "21", -1j, mm1)

    at("42", "42", +1j * d42 - G24)
    at("42", "22", +1j * g42)
    for pop in ("11", "22", "33"):
        at("42", pop, +1j * g42)
    s0[IDX["42"]] = +1j * g42
    at("42", "43", -1j * g32)
    at("42", "12", +1j, m1)

    # probe coherence rho41 and its partner rho14: the rho44 - rho11 source
    # term is where gbar41 (and hence the entire phase dependence) enters.
    at("14", "14", 1j * (d32 - d31 - d42) - G14)
    at("14", "12", -1j * c42)
    at("14", "34", +1j * c31)
    at("14", "11", -2j, mm1)
    at("14", "22", -1j, mm1)
    at("14", "33", -1j, mm1)
    sm1[IDX["14"]] = -1j

    at("41", "41", -1j * (d32 - d31 - d42) - G14)
    at("41", "21", +1j * g42)
    at("41", "43", -1j * g31)
    at("41", "11", +2j, m1)
    at("41", "22", +1j, m1)
    at("41", "33", +1j, m1)
    s1[IDX["41"]] = +1j

    # --- excited-state coherence ------------------------------------------
    at("34", "34", -1j * (d42 - d32) - G34)
    at("34", "14", +1j * g31)
    at("34", "24", +1j * g32)
    at("34", "32", -1j * c42)
    at("34", "31", -1j, mm1)

    at("43", "43", +1j * (d42 - d32) - G34)
    at("43", "41", -1j * c31)
    at("43", "42", -1j * c32)
    at("43", "23", +1j * g42)
    at("43", "13", +1j, m1)

    for arr in (m0, m1, mm1, s0, s1, sm1):
        arr.setflags(write=False)
    return LiouvillianParts(m0=m0, m1=m1, mm1=mm1, s0=s0, s1=s1, sm1=sm1,
                            gbar41=p.gbar41)
