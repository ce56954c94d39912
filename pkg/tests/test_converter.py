import math

import numpy as np
import pytest

import mwqi
from mwqi import (
    Cooperativities,
    InstabilityError,
    UndefinedMetricError,
    coefficients,
    drift_matrix,
    entanglement_metric,
    is_stable,
    nominal_params,
    planck_occupation,
    source_moments,
    source_state,
    symplectic_spectrum,
)


# ---------------------------------------------------------------------------
# Planck occupation
# ---------------------------------------------------------------------------

def test_planck_bright_microwave_background():
    n = planck_occupation(2 * math.pi * 10e9, 293.0)
    assert abs(n - 610.0) < 1.0


def test_planck_mechanical_occupation():
    n = planck_occupation(2 * math.pi * 10e6, 30e-3)
    assert abs(n - 62.0) < 0.5


def test_planck_zero_temperature():
    assert planck_occupation(2 * math.pi * 5e9, 0.0) == 0.0


def test_planck_optical_underflows():
    p = nominal_params()
    assert planck_occupation(p.omega_o, p.t_eom) == 0.0


def test_planck_validation():
    with pytest.raises(ValueError):
        planck_occupation(-1.0, 1.0)
    with pytest.raises(ValueError):
        planck_occupation(1.0, -1.0)


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------

def test_coefficients_unit_cooperativities():
    c = coefficients(Cooperativities(1.0, 1.0))
    assert c.a_w == pytest.approx(3.0, abs=1e-14)
    assert c.a_o == pytest.approx(5.0, abs=1e-14)
    assert c.b == pytest.approx(4.0, abs=1e-14)
    assert c.c_w == pytest.approx(math.sqrt(8.0), abs=1e-14)
    assert c.c_o == pytest.approx(math.sqrt(8.0), abs=1e-14)
    assert c.sign_w == -1.0
    assert c.a_w ** 2 - c.b ** 2 + c.c_w ** 2 == pytest.approx(1.0, abs=1e-12)
    assert c.a_o ** 2 - c.b ** 2 - c.c_o ** 2 == pytest.approx(1.0, abs=1e-12)


def test_coefficients_decoupled_optical():
    c = coefficients(Cooperativities(2.0, 0.0))
    assert c.b == 0.0
    assert c.c_o == 0.0
    assert c.a_o == 1.0


def test_coefficients_reference_point(ref_coefficients):
    # denominator 1 + 2*5181.95 - 2*668.43 = 9028.04
    assert ref_coefficients.b == pytest.approx(0.8246, abs=5e-5)
    assert ref_coefficients.a_w == pytest.approx(1.2958, abs=2e-4)
    assert ref_coefficients.sign_w == -1.0


def test_coefficients_instability():
    with pytest.raises(InstabilityError):
        coefficients(Cooperativities(1.0, 2.0))


def stable_grid_50x50():
    """50x50 grid covering the stable region: cooperativity ratio up to 90%
    of the adiabatic bound."""
    gws = np.geomspace(1e-2, 1e4, 50)
    fractions = np.geomspace(1e-4, 0.9, 50)
    return [(gw, f * (gw + 0.5)) for gw in gws for f in fractions]


def test_commutator_identities_on_stable_grid():
    worst = 0.0
    for gw, go in stable_grid_50x50():
        c = coefficients(Cooperativities(gw, go))
        r1 = c.a_w ** 2 - c.b ** 2 + c.c_w ** 2 - 1.0
        r2 = c.a_o ** 2 - c.b ** 2 - c.c_o ** 2 - 1.0
        worst = max(worst, abs(r1), abs(r2))
    assert worst < 1e-12


# ---------------------------------------------------------------------------
# source moments
# ---------------------------------------------------------------------------

def test_moments_zero_occupation_decoupled():
    c = coefficients(Cooperativities(3.0, 0.0))
    m = source_moments(c, 0.0, 0.0, 0.0)
    assert m.n_w == 0.0
    assert m.n_o == 0.0
    assert m.cross == 0.0


def test_moments_zero_occupation_general():
    # cold converter: n_w = b^2, n_o = b^2 + c_o^2, and the output pair sits
    # exactly on the physical boundary (it purifies with the mechanical output)
    c = coefficients(Cooperativities(1.0, 1.0))
    m = source_moments(c, 0.0, 0.0, 0.0)
    assert m.n_w == pytest.approx(c.b ** 2, rel=1e-12)
    assert m.n_o == pytest.approx(c.b ** 2 + c.c_o ** 2, rel=1e-12)
    data = symplectic_spectrum(source_state(m))
    assert abs(data.nu_minus - 1.0) < 1e-9


def test_moments_negative_occupation_rejected():
    c = coefficients(Cooperativities(1.0, 1.0))
    with pytest.raises(ValueError):
        source_moments(c, -0.1, 0.0, 0.0)


def test_reference_moments(ref_moments):
    assert abs(ref_moments.n_w - 0.739) / 0.739 < 0.05
    assert abs(ref_moments.n_o - 0.681) / 0.681 < 0.05


def test_source_physicality_over_grid(params):
    temps = (0.0, 30e-3, 300e-3)
    worst = math.inf
    for t in temps:
        n_w_t = planck_occupation(params.omega_w, t)
        n_b_t = planck_occupation(params.omega_m, t)
        for gw in np.geomspace(1e-2, 1e4, 25):
            for go in np.geomspace(1e-2, 1e4, 25):
                if 1 + 2 * gw - 2 * go <= 0:
                    continue
                m = source_moments(coefficients(Cooperativities(gw, go)),
                                   n_w_t, 0.0, n_b_t)
                data = symplectic_spectrum(source_state(m, tol=1e-6))
                worst = min(worst, data.nu_minus)
    assert worst >= 1.0 - 1e-9


# ---------------------------------------------------------------------------
# entanglement metric
# ---------------------------------------------------------------------------

def test_metric_zero_cross():
    m = mwqi.SourceMoments(n_w=1.0, n_o=1.0, cross=0.0)
    assert entanglement_metric(m) == 0.0


@pytest.mark.parametrize("r", [0.3, 1.0, 2.5])
def test_metric_tmsv(r):
    m = mwqi.SourceMoments(n_w=math.sinh(r) ** 2, n_o=math.sinh(r) ** 2,
                           cross=math.cosh(r) * math.sinh(r))
    assert entanglement_metric(m) == pytest.approx(math.cosh(r) / math.sinh(r), rel=1e-12)
    assert entanglement_metric(m) > 1.0


def test_metric_reference(ref_moments):
    # 1.084 / sqrt(0.739 * 0.681) from the published operating point
    assert entanglement_metric(ref_moments) == pytest.approx(1.528, rel=0.05)


def test_metric_undefined():
    with pytest.raises(UndefinedMetricError):
        entanglement_metric(mwqi.SourceMoments(n_w=0.0, n_o=1.0, cross=0.0))


def test_metric_monotone_in_cooperativities(params):
    # cold converter: the metric falls toward 1 as the down-conversion drive
    # grows at fixed microwave drive, and grows with the microwave drive
    def metric_at(gw, go):
        m = source_moments(coefficients(Cooperativities(gw, go)), 0.0, 0.0, 0.0)
        return entanglement_metric(m)

    go_scan = [metric_at(5.0, go) for go in np.linspace(0.5, 5.0, 12)]
    assert all(a > b for a, b in zip(go_scan, go_scan[1:]))
    gw_scan = [metric_at(gw, 1.0) for gw in np.geomspace(2.0, 1e3, 12)]
    assert all(a < b for a, b in zip(gw_scan, gw_scan[1:]))


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------

def test_stability_decoupled(params):
    rep = is_stable(Cooperativities(0.0, 0.0), params)
    assert rep.stable
    expected = min(params.gamma_m / 2, params.kappa_w, params.kappa_o)
    assert rep.margin == pytest.approx(expected, rel=1e-9)


def test_stability_reference(params, ref_coop):
    rep = is_stable(ref_coop, params)
    assert rep.stable
    assert rep.adiabatic_stable


def test_stability_adiabatic_violation(params):
    rep = is_stable(Cooperativities(10.0, 11.0), params)
    assert not rep.stable
    assert not rep.adiabatic_stable


def test_drift_matrix_shape(params):
    m = drift_matrix(Cooperativities(3.0, 1.0), params)
    assert m.shape == (6, 6)
    # damped diagonal
    assert np.all(np.diag(m) < 0)


def test_stability_agrees_with_adiabatic_criterion(params):
    near_boundary = []
    for gw in np.geomspace(1e-2, 1e4, 20):
        for go in np.geomspace(1e-2, 1e4, 20):
            rep = is_stable(Cooperativities(gw, go), params)
            boundary = gw + 0.5
            if abs(go - boundary) / boundary <= 0.05:
                if rep.stable != rep.adiabatic_stable:
                    near_boundary.append((gw, go))
                continue
            assert rep.stable == rep.adiabatic_stable, (gw, go)
    # disagreements may only occur inside the 5% boundary band; log them
    if near_boundary:
        print(f"near-boundary stability disagreements: {near_boundary}")


# ---------------------------------------------------------------------------
# parameter plumbing
# ---------------------------------------------------------------------------

def test_cooperativities_from_photon_numbers(params):
    n_w_cav, n_o_cav = 3e7, 5e9
    coop = Cooperativities.from_intracavity_photons(params, n_w_cav, n_o_cav)
    gm = params.gamma_m
    assert coop.gamma_w == pytest.approx(
        params.g_w ** 2 * n_w_cav / (params.kappa_w * gm), rel=1e-12)
    assert coop.gamma_o == pytest.approx(
        params.g_o ** 2 * n_o_cav / (params.kappa_o * gm), rel=1e-12)


def test_bath_occupations(params, baths):
    assert baths.n_o == 0.0
    assert baths.n_b == pytest.approx(62.0, abs=0.5)
    assert 0 < baths.n_w < 1e-6


def test_params_validation():
    with pytest.raises(ValueError):
        nominal_params(t_eom=-1.0)
    with pytest.raises(ValueError):
        Cooperativities(-1.0, 0.0)
