import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from spinlight import solver
from spinlight.constants import CODATA2018, SCALED
from spinlight.errors import InvalidGridError, InvalidInputError, WindowError
from spinlight.fields import PlaneWave, plane_wave_fields, rs_compose, rs_constitutive
from spinlight.geometry import Event
from spinlight.grid import GridSpec, curl, interior_norms
from spinlight.optics import VACUUM, ConstitutiveTensors, MediumParams
from spinlight.solver import (
    HelicityMode,
    RotatingMedium,
    ansatz_field,
    curl_residual,
    default_grid,
    dispersion_axial,
    dispersion_oblique,
    dispersion_recover,
    divergence_residual,
    golden_section,
    helicity_splitting,
    mode_excitation,
    zeta_profile,
)

C = CODATA2018.c
GLASS = MediumParams(2.25, 1.0)
TWO_PI = 2 * math.pi


def scaled_box(points, side=1.0, transverse=1.0):
    return GridSpec((0, 0, 0), (transverse / 2, transverse / 2, side / 2), points)


# -- closed forms ----------------------------------------------------------------


def test_zeta_examples():
    m0 = HelicityMode(1, 1e15, 1.0)
    assert zeta_profile(m0, 3.0, 4.0) == 0
    m = HelicityMode(1, 1e15, 1.0, Omega_z=1e3)
    assert zeta_profile(m, 0.0, 0.0) == 0
    z = zeta_profile(m, 1.0, 0.0)
    assert z.real == 0
    assert z.imag == pytest.approx(1e3 / C, rel=1e-15)
    assert z.imag == pytest.approx(3.336e-6, rel=1e-3)


def test_ansatz_examples():
    m = HelicityMode.closed_form(-1, 1e15, 0.0, GLASS, eta=2.0)
    F = ansatz_field(m, Event(0, 0.3, -0.1, 0.0))
    np.testing.assert_allclose(F, [2.0, -2j, 0.0])
    r = np.array([[1e-6, 2e-6, 0.0], [0.0, 0.0, 5e-7]])
    F = ansatz_field(m, r)
    assert np.all(F[:, 2] == 0)
    np.testing.assert_allclose(np.abs(F[:, :2]), 2.0)


@given(rho=st.floats(0, 1e3), phi=st.floats(0, 6.3), h=st.sampled_from([1, -1]),
       Om=st.floats(-1e4, 1e4))
def test_longitudinal_ratio(rho, phi, h, Om):
    m = HelicityMode(h, 1e15, 1.0, eta=0.5 - 1j, medium=GLASS, Omega_z=Om)
    F = ansatz_field(m, np.array([rho * math.cos(phi), rho * math.sin(phi), 0.2]))
    assert abs(F[2]) / abs(m.eta) == pytest.approx(1.5 * abs(Om) * rho / C, rel=1e-12, abs=1e-300)


def test_mode_invariants():
    with pytest.raises(InvalidInputError):
        HelicityMode(2, 1.0, 1.0)
    with pytest.raises(InvalidInputError):
        HelicityMode(1, -1.0, 1.0)


def test_dispersion_axial_examples():
    assert dispersion_axial(1e15, 0.0, GLASS, 1) == 1.5 * 1e15 / C
    for h in (1, -1):
        assert C * dispersion_axial(1e15, 1e5, VACUUM, h) == pytest.approx(1e15 + h * 1e5, rel=1e-15)
    k = dispersion_axial(1e15, 1e5, GLASS, 1)
    assert k == 1.5 * (1e15 + 1e5) / C
    assert k == pytest.approx(5003461.4279722804 * (1 + 1e-10), rel=1e-14)


@given(w=st.floats(1e10, 1e16), f=st.floats(-1e-4, 1e-4), m=st.sampled_from([VACUUM, GLASS]))
def test_dispersion_axial_symmetries(w, f, m):
    Om = f * w
    assert dispersion_axial(w, Om, m, 1) == dispersion_axial(w, -Om, m, -1)
    split = dispersion_axial(w, Om, m, 1) - dispersion_axial(w, Om, m, -1)
    k = m.n * w / C
    assert abs(split - helicity_splitting(Om, m)) <= 4e-16 * k
    assert helicity_splitting(Om, m) == 2 * m.n * Om / C


def test_fast_rotation_warns():
    with pytest.warns(RuntimeWarning):
        dispersion_axial(1.0, 0.01, VACUUM, 1, SCALED)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dispersion_axial(1.0, 1e-4, VACUUM, 1, SCALED)


def test_dispersion_oblique():
    Om = np.array([0.0, 0.0, 1e3])
    for h in (1, -1):
        assert dispersion_oblique(1e15, Om, (1, 0, 0), h) == 1e15 / C
        assert dispersion_oblique(1e15, Om, (0, 0, 1), h) == dispersion_axial(1e15, 1e3, VACUUM, h)
    with pytest.raises(InvalidInputError):
        dispersion_oblique(1e15, Om, (0, 0, 2), 1)


def test_dispersion_oblique_fixed_point():
    w, Om = 1.0, np.array([1e-4, -2e-4, 3e-4])
    n_hat = np.array([1.0, 2.0, 2.0]) / 3.0
    k_first = dispersion_oblique(w, Om, n_hat, 1, SCALED)
    # iterate c k = omega + k_hat . Omega with the frequency rescaled by c k / omega
    k = w
    for _ in range(50):
        k = w + (k / w) * (n_hat @ Om)
    assert abs(k - k_first) <= 10 * np.linalg.norm(Om) ** 2 / w
    assert abs(k - k_first) > 0


# -- residuals -----------------------------------------------------------------


def test_curl_residual_vacuum_plane_wave():
    w = PlaneWave(TWO_PI, 1.0, 1)

    def F(r):
        return rs_compose(plane_wave_fields(w, (0.0, r), SCALED), 1.0).F_plus

    rep = curl_residual(F, 1, TWO_PI, RotatingMedium(0.0, const=SCALED), scaled_box(17), SCALED)
    assert rep.order_estimate == pytest.approx(2.0, abs=0.05)


@pytest.mark.filterwarnings("ignore:.Omega./omega:RuntimeWarning")
@pytest.mark.parametrize("h", [1, -1])
def test_curl_residual_matches_exact_residual(h):
    """The FD residual converges at order 2 to the symbolic residual of the ansatz."""
    w, Om, m = TWO_PI, TWO_PI * 1e-2, GLASS
    mode = HelicityMode.closed_form(h, w, Om, m, const=SCALED)
    exact = oracles.ansatz_curl_residual_fn(h)
    medium = RotatingMedium(Om, m, const=SCALED)
    errs = []
    for n in (9, 17, 33):
        grid = scaled_box(n, side=1.0 / m.n)
        X, Y, Z = grid.mesh()
        ref = np.stack(np.broadcast_arrays(*exact(mode.k, w, Om, m.n, 1.0, X, Y, Z)), axis=-1)
        F = ansatz_field(mode, np.stack([X, Y, Z], -1), SCALED)
        R = curl(F, grid.spacing) - h * w * rs_constitutive(F, h, medium(np.stack([X, Y, Z], -1)))
        errs.append(interior_norms(R - ref)[0])
    assert math.log2(errs[0] / errs[1]) > 1.9
    assert math.log2(errs[1] / errs[2]) > 1.9


def test_curl_residual_floor_and_wrong_k():
    w, Om = TWO_PI, TWO_PI * 1e-3
    medium = RotatingMedium(Om, VACUUM, const=SCALED)
    good = HelicityMode.closed_form(1, w, Om, VACUUM, const=SCALED)
    bad = good.with_k(w)
    kw = dict(const=SCALED, estimate_order=False)
    good_norms, bad_norms = [], []
    # thin box: the transverse profile is linear, so only z needs refining
    for n in (33, 65, 129, 257, 513):
        grid = GridSpec((0, 0, 0), (0.05, 0.05, 0.5), (9, 9, n))
        good_norms.append(curl_residual(lambda r: ansatz_field(good, r, SCALED), 1, w, medium,
                                        grid, **kw).max_norm)
        bad_norms.append(curl_residual(lambda r: ansatz_field(bad, r, SCALED), 1, w, medium,
                                       grid, **kw).max_norm)
    orders = [math.log2(a / b) for a, b in zip(good_norms, good_norms[1:])]
    assert min(orders) >= 1.9
    plateau = Om * math.sqrt(2)  # n Omega |F| / c with |F| = sqrt(2)
    assert min(bad_norms) >= plateau
    assert bad_norms[-1] == pytest.approx(plateau, rel=0.05)
    assert bad_norms[-2] / bad_norms[-1] < 1.1

    # with the carrier taken analytically the wrong-k residual is flat in h
    def envelope(r):
        return ansatz_field(bad.with_k(0.0), r, SCALED)

    flat = [curl_residual(envelope, 1, w, medium, scaled_box(n, transverse=0.1), carrier_k=w,
                          **kw).max_norm for n in (9, 17, 33)]
    np.testing.assert_allclose(flat, plateau, rtol=1e-6)


def test_curl_residual_grid_errors():
    medium = RotatingMedium(1.0, const=SCALED)
    with pytest.raises(InvalidGridError):
        curl_residual(lambda r: r + 0j, 1, 1.0, medium, GridSpec.cube(1.0, 17, (2.0, 0, 0)), SCALED)
    with pytest.raises(InvalidGridError):
        GridSpec.cube(1.0, 4)


def test_divergence_residual_vacuum_oblique():
    axis = np.array([1.0, 2.0, 2.0]) / 3.0
    w = PlaneWave(TWO_PI, 1.0, -1, axis)

    def Z(r):
        f = plane_wave_fields(w, (0.0, r), SCALED)
        return rs_compose(f, 1.0).Z_minus

    rep = divergence_residual(Z, GridSpec.cube(1.0, 17), estimate_order=True)
    assert rep.order_estimate == pytest.approx(2.0, abs=0.1)


def test_divergence_residual_ansatz_and_negative_control():
    w = TWO_PI
    floors = []
    for Om in (w * 1e-3, w * 5e-4):
        mode = HelicityMode.closed_form(1, w, Om, VACUUM, const=SCALED)
        Z = mode_excitation(mode, RotatingMedium(Om, const=SCALED), SCALED)
        norms = [divergence_residual(Z, scaled_box(n), False).max_norm for n in (9, 17, 33)]
        # already at the O(Omega^2) floor: bounded by a few Omega^2 on every grid
        assert max(norms) < 3 * Om**2
        floors.append(norms[-1])
    assert floors[0] / floors[1] == pytest.approx(4.0, rel=1e-3)

    def quadratic(r):
        out = np.zeros(r.shape, complex)
        out[..., 0] = r[..., 0] ** 2
        return out

    q = [divergence_residual(quadratic, scaled_box(n), False).max_norm for n in (9, 17, 33)]
    # div (x^2, 0, 0) = 2x is not small and does not shrink with h
    assert min(q) > 0.7 and q[2] >= q[0]


def test_rotating_medium_callable():
    med = RotatingMedium(2.0, GLASS, exact=True, const=SCALED)
    ct = med(np.array([[0.0, 0.0, 0.0], [0.1, 0.0, 0.0]]))
    assert isinstance(ct, ConstitutiveTensors)
    assert ct.xi.shape == (2, 3, 3)
    assert "exact" in repr(med)


# -- recovery ------------------------------------------------------------------


def test_golden_section():
    assert golden_section(lambda v: (v - 0.3) ** 2, -1, 1, 1e-12) == pytest.approx(0.3, abs=1e-11)


@pytest.mark.parametrize("m", [VACUUM, GLASS])
@pytest.mark.parametrize("h", [1, -1])
def test_recover_examples(m, h):
    k0 = dispersion_recover(1e15, 0.0, m, h)
    assert k0 == pytest.approx(m.n * 1e15 / C, rel=1e-9)
    k = dispersion_recover(1e15, 1e3, m, h)
    assert k == pytest.approx(m.n * (1e15 + h * 1e3) / C, rel=1e-12)


def test_recover_scaled_regime_within_box_floor():
    w, Om = 1.0, 1e-4
    for h in (1, -1):
        k = dispersion_recover(w, Om, VACUUM, h, const=SCALED)
        k_ref = dispersion_axial(w, Om, VACUUM, h, SCALED)
        # O(Omega^2) floor of the first-order ansatz on a 10-wavelength box
        assert abs(k - k_ref) / k_ref < 300 * (Om / w) ** 2
        # the helicity split itself is much more accurate than the floor
    kp = dispersion_recover(w, Om, VACUUM, 1, const=SCALED)
    km = dispersion_recover(w, Om, VACUUM, -1, const=SCALED)
    assert kp - km == pytest.approx(2 * Om, rel=1e-3)


def test_recover_window_error(monkeypatch):
    w, Om = 1.0, 1e-4
    real = solver.RotatingMedium.__call__

    def skewed(self, r):
        ct = real(self, r)
        # a medium whose index is off by 10 Omega/omega: the true minimum leaves the window
        return ConstitutiveTensors(ct.xi * (1 + 10 * Om / w), ct.G, ct.lam)

    monkeypatch.setattr(solver.RotatingMedium, "__call__", skewed)
    with pytest.raises(WindowError):
        dispersion_recover(w, Om, VACUUM, 1, const=SCALED)


def test_default_grid():
    g = default_grid(1e15, GLASS)
    lam = TWO_PI * C / (1.5e15)
    np.testing.assert_allclose(2 * np.asarray(g.half_extent), 10 * lam, rtol=1e-15)
    assert g.points == (17, 17, 17)
