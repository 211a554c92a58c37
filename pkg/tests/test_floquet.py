"""Floquet sideband solver, channel assembly, and susceptibility tests.

Frozen reference values (hand-derived from the closed-form expansion at the
symmetric point g31 = g32 = g42 = 0.6, gamma = 0.5 — see test_steady.py for
the arithmetic):

    [r0]_41  = -0.13513513513513514 i
    [r1]_41  = +0.15217920623326028 i   (per unit gbar41)
    [rm1]_41 = -0.07304601899196493 i   (per unit conj(gbar41))
"""

import numpy as np
import pytest

from lambdaloop.floquet import (FloquetSolution, MediumConstants,
                                ZeroProbeAmplitudeError, assemble_components,
                                solve_floquet, susceptibility)
from lambdaloop.model import (IDX, RHO41, SingularSystemError, SystemParams,
                              build_liouvillian, loop_params)
from lambdaloop.steady import probe_frame, solve_steady

R0_41 = -0.13513513513513514j
R1_41 = +0.15217920623326028j
RM1_41 = -0.07304601899196493j

#: Index of the component holding the conjugate of component k.
CONJ_INDEX = {IDX[a + b]: IDX[b + a] for a in "1234" for b in "1234" if a + b in IDX}


def symmetric(**kw) -> SystemParams:
    base = dict(g31=0.6, g32=0.6, g42=0.6, g41=0.01)
    base.update(kw)
    return SystemParams(**base)


def solve(p: SystemParams):
    parts = build_liouvillian(p)
    loop = loop_params(p)
    return solve_floquet(parts, loop), parts, loop


# ---------------------------------------------------------------------------
# Harmonic amplitudes against the frozen closed-form terms
# ---------------------------------------------------------------------------


def test_harmonics_match_frozen_closed_form_terms():
    sol, _, _ = solve(symmetric())
    assert abs(sol.r0[RHO41] - R0_41) <= 1e-12
    assert abs(sol.r1[RHO41] - R1_41) <= 1e-12
    assert abs(sol.rm1[RHO41] - RM1_41) <= 1e-12


def test_sidebands_do_not_depend_on_probe_strength_or_phase():
    ref, _, _ = solve(symmetric())
    for kw in (dict(g41=0.05), dict(phi0=2.2), dict(kr=-0.7),
               dict(g41=0.001, phi0=1.0, kr=0.3)):
        sol, _, _ = solve(symmetric(**kw))
        assert np.max(np.abs(sol.r0 - ref.r0)) <= 1e-13
        assert np.max(np.abs(sol.r1 - ref.r1)) <= 1e-13
        assert np.max(np.abs(sol.rm1 - ref.rm1)) <= 1e-13


def test_loop_scatter_amplitude_is_independent_of_delta():
    # Only the probe detuning moves: the zeroth harmonic may not notice.
    values = []
    for d41 in (0.0, 1.0, 5.0, 20.0):
        sol, _, _ = solve(SystemParams(g31=1.8, g32=0.2, g42=0.5, g41=0.01,
                                       d41=d41))
        values.append(sol.r0[RHO41])
    for v in values[1:]:
        assert abs(v - values[0]) <= 1e-12


def test_sideband_amplitudes_do_depend_on_delta():
    sol_a, _, _ = solve(symmetric(d41=0.5))
    sol_b, _, _ = solve(symmetric(d41=2.0))
    assert abs(sol_a.r1[RHO41] - sol_b.r1[RHO41]) > 1e-3


def test_hermitian_pairing_between_sidebands():
    # The -1 sideband is the elementwise conjugate transpose of the +1 one:
    # [rm1]_ab = conj([r1]_ba) across the whole vector.
    rng = np.random.default_rng(31)
    for _ in range(10):
        p = SystemParams(
            g31=rng.uniform(0.2, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)),
            g32=rng.uniform(0.2, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)),
            g42=rng.uniform(0.2, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)),
            g41=0.01, d31=rng.uniform(-2, 2), d32=rng.uniform(-2, 2),
            d42=rng.uniform(-2, 2), d41=rng.uniform(-2, 2),
            gamma13=rng.uniform(0.2, 0.8), gamma14=rng.uniform(0.2, 0.8),
            gamma23=rng.uniform(0.2, 0.8), gamma24=rng.uniform(0.2, 0.8))
        sol, _, _ = solve(p)
        worst = max(abs(sol.rm1[k] - np.conj(sol.r1[l]))
                    for k, l in CONJ_INDEX.items())
        assert worst <= 1e-10


# ---------------------------------------------------------------------------
# Channel assembly
# ---------------------------------------------------------------------------


def test_assembled_channels_at_symmetric_point():
    sol, parts, loop = solve(symmetric())
    comps = assemble_components(sol, parts, loop, t=0.0)
    assert abs(comps.direct - 0.01 * R1_41) <= 1e-12
    assert abs(comps.loop_scatter - R0_41) <= 1e-12
    assert abs(comps.counter - 0.01 * RM1_41) <= 1e-12
    assert abs(comps.total - (R0_41 + 0.01 * (R1_41 + RM1_41))) <= 1e-12


def test_direct_channel_ignores_loop_phase():
    values = []
    for phi0 in (0.0, np.pi / 2, np.pi):
        sol, parts, loop = solve(symmetric(phi0=phi0))
        values.append(assemble_components(sol, parts, loop, t=0.0).direct)
    assert abs(values[1] - values[0]) <= 1e-12
    assert abs(values[2] - values[0]) <= 1e-12


def test_counter_channel_depends_on_twice_the_loop_phase():
    comps = {}
    for phi0 in (0.0, np.pi / 2, np.pi):
        sol, parts, loop = solve(symmetric(phi0=phi0))
        comps[phi0] = assemble_components(sol, parts, loop, t=0.0).counter
    assert abs(comps[np.pi] - comps[0.0]) <= 1e-12     # e^{-2i*pi} = 1
    assert abs(comps[np.pi / 2] - comps[0.0]) > 1e-6   # e^{-i*pi} = -1
    assert abs(comps[np.pi / 2] + comps[0.0]) <= 1e-12


def test_loop_channel_rotates_with_loop_phase():
    sol, parts, loop = solve(symmetric(phi0=0.9, kr=0.2))
    comps = assemble_components(sol, parts, loop, t=0.0)
    assert abs(comps.loop_scatter - R0_41 * np.exp(1j * (0.2 - 0.9))) <= 1e-12


def test_channels_scale_linearly_in_probe():
    sol_a, parts_a, loop_a = solve(symmetric(g41=0.01))
    sol_b, parts_b, loop_b = solve(symmetric(g41=0.02))
    a = assemble_components(sol_a, parts_a, loop_a, t=0.0)
    b = assemble_components(sol_b, parts_b, loop_b, t=0.0)
    assert abs(b.direct - 2.0 * a.direct) <= 1e-15
    assert abs(b.counter - 2.0 * a.counter) <= 1e-15
    assert abs(complex(b.loop_scatter) - complex(a.loop_scatter)) <= 1e-15


def test_total_at_resonance_matches_steady_to_probe_squared():
    for g41 in (1e-2, 1e-3, 1e-4):
        p = symmetric(g41=g41, phi0=0.8)
        parts = build_liouvillian(p)
        loop = loop_params(p)
        sol = solve_floquet(parts, loop)
        total = assemble_components(sol, parts, loop, t=0.0).total
        hat = probe_frame(solve_steady(parts, loop).rho41, loop, 0.0)
        assert abs(total - hat) <= max(1e-8, g41 ** 2)


def test_time_dependence_off_resonance():
    # Channels beat against each other at delta and 2*delta.
    p = symmetric(d41=1.5)
    sol, parts, loop = solve(p)
    t = 0.73
    c0 = assemble_components(sol, parts, loop, 0.0)
    ct = assemble_components(sol, parts, loop, t)
    assert abs(ct.direct - c0.direct) <= 1e-15
    assert abs(ct.loop_scatter - c0.loop_scatter * np.exp(1j * loop.delta * t)) <= 1e-12
    assert abs(ct.counter - c0.counter * np.exp(2j * loop.delta * t)) <= 1e-12


def test_all_couplings_off_is_singular():
    p = SystemParams(g31=0.0, g32=0.0, g42=0.0, g41=0.01)
    with pytest.raises(SingularSystemError):
        solve(p)


# ---------------------------------------------------------------------------
# Susceptibility
# ---------------------------------------------------------------------------


def test_susceptibility_identity_without_medium():
    z = 0.123 - 0.456j
    assert susceptibility(z) == z


def test_sodium_prefactor_is_close_to_one():
    medium = MediumConstants.sodium_d1()
    assert abs(medium.prefactor - 1.0) <= 0.1
    z = 0.1 - 0.2j
    assert susceptibility(z, medium) == pytest.approx(medium.prefactor * z)


def test_prefactor_scales_with_density_and_probe():
    m1 = MediumConstants.sodium_d1()
    m2 = MediumConstants(gamma0=m1.gamma0, dipole=m1.dipole,
                         density=2 * m1.density, wavelength=m1.wavelength,
                         probe_g41=m1.probe_g41)
    assert m2.prefactor == pytest.approx(2.0 * m1.prefactor)
    m3 = MediumConstants.sodium_d1(probe_g41=0.02)
    assert m3.prefactor == pytest.approx(0.5 * m1.prefactor)


def test_zero_probe_amplitude_rejected():
    with pytest.raises(ZeroProbeAmplitudeError):
        _ = MediumConstants.sodium_d1(probe_g41=0.0).prefactor


def test_sodium_carrier_scale():
    # omega_p / gamma0 for the sodium D1 line is a little over 5e7.
    carrier = MediumConstants.sodium_d1().carrier_over_gamma0
    assert 4.5e7 <= carrier <= 5.5e7
