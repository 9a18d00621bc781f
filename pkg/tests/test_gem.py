import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from spinlight.constants import CODATA2018, SCALED
from spinlight.errors import InteriorPointError, InvalidInputError, WeakFieldError
from spinlight.geometry import Event, MetricComponents
from spinlight.gem import (
    CATALOG,
    EARTH,
    GEMSource,
    faraday_rotation_axial,
    faraday_rotation_numeric,
    gem_fields,
    gem_metric,
    gem_potentials,
    gravitomagnetic_dispersion,
    gravitomagnetic_scalar_potential,
    gravitomagnetic_wavenumber_shift,
    larmor_frequency,
    load_catalog,
    spin_gravity_energy,
)
from spinlight.grid import GridSpec, curl, divergence

C, G, HBAR = CODATA2018.c, CODATA2018.G, CODATA2018.hbar
R, J = EARTH.body_radius, EARTH.J[2]
E_Z = np.array([0.0, 0.0, 1.0])

# a tilted unit-scale source for finite-difference work
TOY = GEMSource(1.0, (0.3, -0.2, 1.0), 1.0)
BOX = GridSpec((1.6, 0.4, 1.1), (0.2, 0.2, 0.2), (9, 9, 9))

outside = st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5)).filter(
    lambda p: np.linalg.norm(p) > 1.05
)


def on_mesh(f, grid):
    """Evaluate a point function of the toy source over ``grid``; returns (..., k)."""
    X, Y, Z = grid.mesh()
    pts = np.stack([X, Y, Z], axis=-1)
    vals = [np.atleast_1d(f(p)) for p in pts.reshape(-1, 3)]
    return np.asarray(vals).reshape(X.shape + (-1,))


def grad(scalar, h):
    return np.stack(np.gradient(scalar[..., 0], *h, edge_order=2), axis=-1)


def common_node_order(ev, grid):
    """log2 of the error ratio at interior nodes shared by ``grid`` and its refinement."""
    coarse = np.abs(ev(grid))[1:-1, 1:-1, 1:-1]
    fine = np.abs(ev(grid.refined()))[2:-2:2, 2:-2:2, 2:-2:2]
    return math.log2(coarse.max() / fine.max()), fine.max()


def B_toy(p):
    return gem_fields(TOY, p, SCALED).B_g


# potentials

def test_potentials_examples():
    src = GEMSource(2.0, (0, 0, 0), 1.0)
    p = gem_potentials(src, (3.0, 0, 0), SCALED)
    assert p.Phi_g == pytest.approx(2.0 / 3.0, rel=1e-15)
    np.testing.assert_array_equal(p.A_g, 0)
    p = gem_potentials(EARTH, (0, 0, 2 * R))
    np.testing.assert_array_equal(p.A_g, 0)
    assert p.Phi_g == pytest.approx(G * EARTH.M / (2 * R), rel=1e-15)


def test_earth_weak_field_smallness():
    phi = gem_potentials(EARTH, (R, 0, 0)).Phi_g / C**2
    assert phi == pytest.approx(6.95e-10, rel=5e-3)


@given(outside)
def test_potentials_positive_outside(p):
    assert gem_potentials(TOY, p, SCALED).Phi_g > 0


def test_interior_points_rejected():
    for f in (gem_potentials, gem_fields, gravitomagnetic_scalar_potential):
        with pytest.raises(InteriorPointError):
            f(EARTH, (0.5 * R, 0, 0))
    # the surface itself is exterior
    gem_fields(EARTH, (0, 0, R))
    with pytest.raises(InvalidInputError):
        GEMSource(0.0, (0, 0, 1), 1.0)
    with pytest.raises(InvalidInputError):
        GEMSource(1.0, (0, 0, 1), -1.0)


# fields

@given(outside)
def test_fields_match_symbolic_oracle(p):
    f = gem_fields(TOY, p, SCALED)
    E_sym, B_sym, mgrad_chi = oracles.gem_fields_symbolic(1.0, 1.0, TOY.M, TOY.J, p)
    scaleB = np.linalg.norm(TOY.J) / np.linalg.norm(p) ** 3
    np.testing.assert_allclose(f.E_g, E_sym, rtol=1e-12, atol=1e-14 / np.linalg.norm(p) ** 2)
    np.testing.assert_allclose(f.B_g, B_sym, rtol=0, atol=1e-13 * scaleB)
    np.testing.assert_allclose(f.B_g, mgrad_chi, rtol=0, atol=1e-13 * scaleB)


def test_field_examples():
    for z in (R, 3 * R):
        B = gem_fields(EARTH, (0, 0, z)).B_g
        np.testing.assert_allclose(B, [0, 0, 2 * G * J / (C * z**3)], rtol=1e-14)
    B = gem_fields(EARTH, (0.6 * 2 * R, 0.8 * 2 * R, 0)).B_g
    np.testing.assert_allclose(B, [0, 0, -G * J / (C * (2 * R) ** 3)], rtol=1e-14, atol=1e-40)


def test_newtonian_acceleration_points_inward():
    x = np.array([R, 2 * R, -R])
    E = gem_fields(EARTH, x).E_g
    assert (-E) @ x < 0
    assert np.linalg.norm(E) == pytest.approx(G * EARTH.M / (x @ x), rel=1e-14)


def test_B_divergence_and_curl_free():
    def div(gr):
        return divergence(on_mesh(B_toy, gr), gr.spacing)[..., None]

    def rot(gr):
        return curl(on_mesh(B_toy, gr), gr.spacing)

    for ev in (div, rot):
        order, err = common_node_order(ev, BOX)
        assert order > 1.9
        assert err < 5e-3 * np.abs(on_mesh(B_toy, BOX)).max()


def test_B_equals_minus_grad_chi():
    def ev(gr):
        chi = on_mesh(lambda p: gravitomagnetic_scalar_potential(TOY, p, SCALED), gr)
        return -grad(chi, gr.spacing) - on_mesh(B_toy, gr)

    assert common_node_order(ev, BOX)[0] > 1.9


def test_B_equals_curl_A_and_E_equals_minus_grad_phi():
    def evB(gr):
        A = on_mesh(lambda p: gem_potentials(TOY, p, SCALED).A_g, gr)
        return curl(A, gr.spacing) - on_mesh(B_toy, gr)

    def evE(gr):
        phi = on_mesh(lambda p: gem_potentials(TOY, p, SCALED).Phi_g, gr)
        return -grad(phi, gr.spacing) - on_mesh(lambda p: gem_fields(TOY, p, SCALED).E_g, gr)

    assert common_node_order(evB, BOX)[0] > 1.9
    assert common_node_order(evE, BOX)[0] > 1.9


def test_scalar_potential_examples():
    assert gravitomagnetic_scalar_potential(EARTH, (2 * R, R, 0)) == 0.0
    assert gravitomagnetic_scalar_potential(EARTH, (0, 0, 2 * R)) == pytest.approx(
        G * J / (C * 4 * R**2), rel=1e-14)


# metric

def test_metric_minkowski_limit():
    tiny = GEMSource(1e-300, (0, 0, 0), 1.0)
    g = gem_metric(tiny, Event(0, 3.0, 0, 0))
    np.testing.assert_allclose(g.g, MetricComponents.minkowski().g, rtol=1e-15, atol=0)


def test_metric_components():
    at = Event(0, 0.5 * R, 0.3 * R, 1.1 * R)
    g = gem_metric(EARTH, at).g
    A = gem_potentials(EARTH, at.position).A_g
    np.testing.assert_array_equal(g[0, 1:], -(2 / C) * A)
    np.testing.assert_array_equal(g[1:, 0], g[0, 1:])
    phi = gem_potentials(EARTH, at.position).Phi_g / C**2
    assert g[0, 0] == pytest.approx(-(1 - 2 * phi) * C**2, rel=1e-15)


def test_metric_determinant_linear_in_phi():
    src = GEMSource(1.0, (0, 0, 0.1), 1.0)
    dev = []
    for r in (100.0, 200.0, 400.0):
        g = gem_metric(src, Event(0, 0, 0, r), SCALED)
        dev.append(-np.linalg.det(g.g) - 1.0)
        assert dev[-1] == pytest.approx(4 / r, rel=1e-2)
    assert dev[0] / dev[1] == pytest.approx(2.0, rel=1e-2)
    assert dev[1] / dev[2] == pytest.approx(2.0, rel=1e-2)


def test_metric_weak_field_violation():
    compact = GEMSource(1.0, (0, 0, 0), 1.0)
    with pytest.raises(WeakFieldError):
        gem_metric(compact, Event(0, 0, 0, 10.0), SCALED)
    gem_metric(compact, Event(0, 0, 0, 300.0), SCALED)


# spin couplings

def test_larmor_frequency():
    np.testing.assert_array_equal(larmor_frequency((0, 0, 0)), 0)
    B = gem_fields(EARTH, (0, 0, R)).B_g
    Om = larmor_frequency(B)
    assert 1e-14 <= np.linalg.norm(Om) < 1e-13
    assert np.linalg.norm(Om) == pytest.approx(2 * G * J / (C**2 * R**3), rel=1e-14)
    assert Om @ B == pytest.approx(-np.linalg.norm(Om) * np.linalg.norm(B), rel=1e-15)


@given(outside)
def test_larmor_antiparallel(p):
    B = gem_fields(TOY, p, SCALED).B_g
    Om = larmor_frequency(B, SCALED)
    np.testing.assert_allclose(Om, -B)


def test_spin_gravity_energy_scale():
    B = gem_fields(EARTH, (0, 0, R)).B_g
    E = abs(spin_gravity_energy((0, 0, HBAR), B)) / CODATA2018.e_charge
    assert 1e-29 / 3 <= E <= 3e-29
    assert spin_gravity_energy((HBAR, 0, 0), B) == 0.0


@given(outside, st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_spin_gravity_matches_larmor(p, S):
    S = np.asarray(S)
    B = gem_fields(TOY, p, SCALED).B_g
    E = spin_gravity_energy(S, B, SCALED)
    assert E == pytest.approx(-(S @ larmor_frequency(B, SCALED)), rel=1e-14, abs=1e-16)
    assert spin_gravity_energy(-S, B, SCALED) == -E


# dispersion

def test_dispersion_without_spin():
    src = GEMSource(EARTH.M, (0, 0, 0), R)
    for h in (1, -1):
        assert gravitomagnetic_dispersion(1e15, src, (0, 0, R), E_Z, h) == 1e15 / C


def test_axial_dispersion():
    w, z = 1e15, 1.5 * R
    b = 2 * G * J / (C**2 * z**3)
    for h in (1, -1):
        shift = gravitomagnetic_wavenumber_shift(EARTH, (0, 0, z), E_Z, h)
        assert shift == pytest.approx(-h * b / C, rel=1e-14)
    kp = gravitomagnetic_wavenumber_shift(EARTH, (0, 0, z), E_Z, 1)
    km = gravitomagnetic_wavenumber_shift(EARTH, (0, 0, z), E_Z, -1)
    assert km - kp == pytest.approx(4 * G * J / (C**3 * z**3), rel=1e-14)
    assert gravitomagnetic_dispersion(w, EARTH, (0, 0, z), E_Z, 1) == pytest.approx(
        (w - b) / C, rel=1e-15)


@given(outside, st.sampled_from([1, -1]))
def test_dispersion_odd_under_helicity_and_spin_flip(p, h):
    flipped = GEMSource(TOY.M, -TOY.J, TOY.body_radius)
    n_hat = np.asarray(p) / np.linalg.norm(p)
    a = gravitomagnetic_wavenumber_shift(TOY, p, n_hat, h, SCALED)
    assert gravitomagnetic_wavenumber_shift(TOY, p, n_hat, -h, SCALED) == -a
    assert gravitomagnetic_wavenumber_shift(flipped, p, n_hat, -h, SCALED) == pytest.approx(a, rel=1e-14)


def test_dispersion_input_checks():
    with pytest.raises(InvalidInputError):
        gravitomagnetic_wavenumber_shift(EARTH, (0, 0, R), (0, 0, 2.0), 1)
    with pytest.raises(InvalidInputError):
        gravitomagnetic_wavenumber_shift(EARTH, (0, 0, R), E_Z, 0)
    with pytest.warns(RuntimeWarning):
        gravitomagnetic_dispersion(1.0, TOY, (0, 0, 1.0), E_Z, 1, SCALED)


# Faraday rotation

def test_faraday_closed_form_examples():
    assert faraday_rotation_axial(EARTH, 2 * R, 2 * R) == 0.0
    assert faraday_rotation_axial(EARTH, R, math.inf) == pytest.approx(G * J / (C**3 * R**2), rel=1e-15)
    d = faraday_rotation_axial(EARTH, R, 2 * R)
    assert d == pytest.approx(G * J / C**3 * (1 / R**2 - 1 / (4 * R**2)), rel=1e-15)
    assert 1e-17 < d < 1e-15


PAIRS = [(1.0, 2.0), (1.0, 10.0), (1.0, 100.0), (3.0, 30.0), (10.0, 100.0), (1.5, 150.0)]


@pytest.mark.parametrize("zi,zf", PAIRS)
def test_faraday_numeric_matches_closed_form(zi, zf):
    num = faraday_rotation_numeric(EARTH, zi * R, zf * R, 1e15)
    closed = faraday_rotation_axial(EARTH, zi * R, zf * R)
    assert num == pytest.approx(closed, rel=1e-9)
    assert num == pytest.approx(oracles.faraday_mp(G, J, C, zi * R, zf * R), rel=1e-9)


def test_faraday_numeric_independent_of_omega():
    vals = [faraday_rotation_numeric(EARTH, R, 50 * R, w) for w in (1e9, 1e12, 1e15, 1e18)]
    assert max(vals) - min(vals) <= 1e-12 * abs(vals[0])
    assert faraday_rotation_numeric(EARTH, R, R, 1e15) == 0.0


def test_faraday_errors():
    with pytest.raises(InvalidInputError):
        faraday_rotation_axial(EARTH, 2 * R, R)
    with pytest.raises(InteriorPointError):
        faraday_rotation_axial(EARTH, 0.5 * R, R)
    tilted = GEMSource(EARTH.M, (1.0, 0, J), R)
    with pytest.raises(InvalidInputError):
        faraday_rotation_axial(tilted, R, 2 * R)
    with pytest.raises(InvalidInputError):
        faraday_rotation_numeric(tilted, R, 2 * R, 1e15)
    with pytest.raises(InvalidInputError):
        faraday_rotation_numeric(EARTH, R, 2 * R, 0.0)


# catalog

def test_catalog(tmp_path):
    assert set(CATALOG) >= {"earth", "sun"}
    assert EARTH.M == 5.972e24 and EARTH.J[2] == 5.86e33 and EARTH.body_radius == 6.371e6
    sun = CATALOG["sun"]
    assert sun.M > 1e30 and sun.J[2] > 0
    p = tmp_path / "cat.json"
    p.write_text(json.dumps({"toy": {"mass_kg": 1.0, "angular_momentum_kg_m2_per_s": [0, 0, 2],
                                     "radius_m": 3.0}}))
    toy = load_catalog(p)["toy"]
    assert (toy.M, toy.body_radius, toy.name) == (1.0, 3.0, "toy")
    p.write_text(json.dumps({"bad": {"mass_kg": 1.0, "radius_m": 3.0}}))
    with pytest.raises(InvalidInputError, match="angular_momentum"):
        load_catalog(p)
