import numpy as np
import pytest

import dropshock as ds
from dropshock.fv import (
    FieldState,
    Grid1D,
    SolverAbort,
    advance,
    kinetic_flux,
    reconstruct_velocity,
    shock_mass,
    source_step,
)

from helpers import DELTA_DATA, PARAMS_02, RELAX_15, VACUUM_DATA


def test_grid_geometry():
    g = Grid1D(-1.0, 2.0, 3000)
    assert g.dx == pytest.approx(1e-3)
    x = g.centers()
    assert x[0] == pytest.approx(-1.0 + 0.5e-3)
    assert x[-1] == pytest.approx(2.0 - 0.5e-3)
    assert g.cell_index(x[17]) == 17
    assert g.cell_index(-5.0) == 0 and g.cell_index(5.0) == 2999


def test_kinetic_flux_rest_state():
    assert kinetic_flux(1.0, 0.0, 2.0, 0.0) == (0.0, 0.0)


def test_kinetic_flux_consistency():
    a, u = 0.7, 1.3
    fm, fq = kinetic_flux(a, u, a, u)
    assert fm == pytest.approx(a * u, rel=1e-15)
    assert fq == pytest.approx(a * u * u, rel=1e-15)


def test_kinetic_flux_compressive_against_particle_oracle():
    # free transport of two monokinetic particle blocks over one step,
    # counting the mass and momentum carried across the interface
    rng = np.random.default_rng(42)
    a_l, u_l, a_r, u_r = 0.8, 1.0, 0.5, -0.6
    dx, dt, n = 1.0, 0.4, 10_000
    x_l = rng.uniform(-dx, 0.0, n)
    x_r = rng.uniform(0.0, dx, n)
    m_l = a_l * dx / n
    m_r = a_r * dx / n
    crossed_l = (x_l + u_l * dt) > 0.0
    crossed_r = (x_r + u_r * dt) < 0.0
    f_mass_mc = (crossed_l.sum() * m_l - crossed_r.sum() * m_r) / dt
    f_mom_mc = (crossed_l.sum() * m_l * u_l - crossed_r.sum() * m_r * u_r) / dt
    f_mass, f_mom = kinetic_flux(a_l, u_l, a_r, u_r)
    assert f_mass == pytest.approx(f_mass_mc, rel=0.02)
    assert f_mom == pytest.approx(f_mom_mc, rel=0.02)


def test_source_step_mu_zero_identity():
    g = Grid1D(0.0, 1.0, 4)
    st = FieldState(g, np.full(4, 0.5), np.full(4, 0.25), 0.0)
    out = source_step(st, ds.ModelParams(0.0, 1.0), 0.5)
    assert np.array_equal(out.q, st.q)


def test_source_step_exact_relaxation():
    g = Grid1D(0.0, 1.0, 1)
    st = FieldState(g, np.array([0.008]), np.array([0.008 * 1.5]), 0.0)
    out = source_step(st, PARAMS_02, 1.0)
    assert out.q[0] / out.alpha[0] == pytest.approx(RELAX_15, rel=1e-14)
    assert np.array_equal(out.alpha, st.alpha)


def test_source_step_fixed_point():
    g = Grid1D(0.0, 1.0, 8)
    alpha = np.linspace(0.1, 0.8, 8)
    st = FieldState(g, alpha, alpha * PARAMS_02.ua, 0.0)
    out = source_step(st, PARAMS_02, 2.0)
    assert np.allclose(out.q, st.q, rtol=0, atol=1e-16)


def test_advance_uniform_equilibrium_state_is_invariant():
    g = Grid1D(-1.0, 2.0, 300)
    alpha = np.full(300, 0.01)
    st = FieldState(g, alpha, alpha * 1.0, 0.0)
    out = advance(st, ds.ModelParams(0.3, 1.0), 0.5, cfl=0.5)
    # a uniform profile shifted by ua*t is itself; the scheme keeps it exactly
    assert np.max(np.abs(out.alpha - 0.01)) <= 1e-15
    assert np.max(np.abs(out.q - 0.01)) <= 1e-15


def test_advance_single_step_conservation():
    g = Grid1D(-1.0, 2.0, 600)
    st = FieldState.from_riemann(g, DELTA_DATA)
    dt = 1e-4
    out = advance(st, PARAMS_02, dt, fixed_dt=dt)
    # recompute the boundary fluxes the step used
    u = reconstruct_velocity(st, PARAMS_02)
    f_left = st.alpha[0] * max(u[0], 0.0) + st.alpha[0] * min(u[0], 0.0)
    f_right = st.alpha[-1] * max(u[-1], 0.0) + st.alpha[-1] * min(u[-1], 0.0)
    dmass = out.total_mass() - st.total_mass()
    assert abs(dmass + dt * (f_right - f_left)) <= 1e-12


def test_advance_multi_step_conservation_interior():
    # no wave reaches the boundary, so the mass budget is the integrated
    # far-field boundary flux; the explicit scheme samples that flux at the
    # start of each step, leaving only a rectangle-rule gap O(dt * t_end)
    g = Grid1D(-1.0, 2.0, 750)
    st = FieldState.from_riemann(g, DELTA_DATA)
    t_end = 0.25
    out = advance(st, PARAMS_02, t_end, cfl=0.3)
    from scipy.integrate import quad

    influx, _ = quad(lambda s: DELTA_DATA.alpha_l * ds.relax_velocity(DELTA_DATA.u_l, PARAMS_02, s), 0, t_end, epsabs=1e-14)
    outflux, _ = quad(lambda s: DELTA_DATA.alpha_r * ds.relax_velocity(DELTA_DATA.u_r, PARAMS_02, s), 0, t_end, epsabs=1e-14)
    assert out.total_mass() - st.total_mass() == pytest.approx(influx - outflux, abs=1e-6)


def test_advance_positivity_and_velocity_hull():
    g = Grid1D(-1.0, 2.0, 750)
    for data in (DELTA_DATA, VACUUM_DATA):
        st = FieldState.from_riemann(g, data)
        for t in (0.25, 0.5, 1.0):
            st = advance(st, PARAMS_02, t, cfl=0.15)
            assert np.min(st.alpha) >= 0.0
            u = reconstruct_velocity(st, PARAMS_02)
            lo = min(data.u_l, data.u_r, PARAMS_02.ua) - 1e-9
            hi = max(data.u_l, data.u_r, PARAMS_02.ua) + 1e-9
            assert np.min(u) >= lo and np.max(u) <= hi


def test_advance_delta_spike_tracks_exact_shock():
    g = Grid1D(-1.0, 2.0, 750)
    st = advance(FieldState.from_riemann(g, DELTA_DATA), PARAMS_02, 1.0, cfl=0.15)
    sol = ds.solve(DELTA_DATA, PARAMS_02)
    j_num = int(np.argmax(st.alpha))
    j_exact = g.cell_index(sol.position(1.0))
    assert abs(j_num - j_exact) <= 3
    excess = shock_mass(st, sol.position(1.0), 0.05, DELTA_DATA.alpha_l, DELTA_DATA.alpha_r)
    assert excess == pytest.approx(sol.weight(1.0), rel=0.1)


def test_advance_vacuum_depth_regression():
    # the numerical vacuum floor sits orders below the side densities and
    # deepens roughly linearly under refinement (first-order scheme)
    sol = ds.solve(VACUUM_DATA, PARAMS_02)
    x1, x2 = sol.bounds(1.0)
    floors = {}
    for n in (750, 1500):
        g = Grid1D(-1.0, 2.0, n)
        st = advance(FieldState.from_riemann(g, VACUUM_DATA), PARAMS_02, 1.0, cfl=0.15)
        x = g.centers()
        inside = (x > x1) & (x < x2)
        floors[n] = float(np.min(st.alpha[inside]))
        assert floors[n] <= min(VACUUM_DATA.alpha_l, VACUUM_DATA.alpha_r) / 50.0
    assert floors[1500] < 0.7 * floors[750]


def test_advance_rejects_bad_inputs():
    g = Grid1D(0.0, 1.0, 32)
    st = FieldState(g, np.full(32, 0.01), np.full(32, 0.01), 0.0)
    with pytest.raises(ValueError):
        advance(st, PARAMS_02, -1.0)
    with pytest.raises(ValueError):
        advance(st, PARAMS_02, 1.0, cfl=1.5)


@pytest.mark.filterwarnings("ignore:invalid value")
def test_advance_aborts_on_nonfinite():
    g = Grid1D(0.0, 1.0, 32)
    q = np.full(32, 0.01)
    q[5] = np.inf
    st = FieldState(g, np.full(32, 0.01), q, 0.0)
    with pytest.raises(SolverAbort):
        advance(st, PARAMS_02, 0.5, cfl=0.5)


def test_advance_fixed_dt_cfl_violation_aborts():
    g = Grid1D(-1.0, 2.0, 100)
    st = FieldState.from_riemann(g, DELTA_DATA)
    with pytest.raises(SolverAbort, match="CFL"):
        advance(st, PARAMS_02, 1.0, fixed_dt=0.1)


def test_advance_zero_duration_echoes_state():
    g = Grid1D(-1.0, 2.0, 64)
    st = FieldState.from_riemann(g, DELTA_DATA)
    out = advance(st, PARAMS_02, 0.0)
    assert np.array_equal(out.alpha, st.alpha) and np.array_equal(out.q, st.q)


def test_shock_mass_background_only_is_zero():
    g = Grid1D(-1.0, 2.0, 500)
    st = FieldState.from_riemann(g, DELTA_DATA)
    assert abs(shock_mass(st, 0.0, 0.25, DELTA_DATA.alpha_l, DELTA_DATA.alpha_r)) <= 1e-12


def test_shock_mass_zero_width_window():
    g = Grid1D(-1.0, 2.0, 500)
    st = FieldState.from_riemann(g, DELTA_DATA)
    assert shock_mass(st, 0.1234, 0.0, DELTA_DATA.alpha_l, DELTA_DATA.alpha_r) == 0.0


def test_shock_mass_window_must_fit_domain():
    g = Grid1D(-1.0, 2.0, 500)
    st = FieldState.from_riemann(g, DELTA_DATA)
    with pytest.raises(ValueError):
        shock_mass(st, 1.9, 0.5, DELTA_DATA.alpha_l, DELTA_DATA.alpha_r)


def test_shock_mass_recovers_lumped_delta():
    sol = ds.solve(DELTA_DATA, PARAMS_02)
    g = Grid1D(-1.0, 2.0, 500)
    st = ds.sample_exact(sol, g, 1.0, lump_delta=True)
    m = shock_mass(st, sol.position(1.0), 0.05, DELTA_DATA.alpha_l, DELTA_DATA.alpha_r)
    assert m == pytest.approx(sol.weight(1.0), rel=1e-12)
