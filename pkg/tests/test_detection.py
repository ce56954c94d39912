import math

import numpy as np
import pytest
from scipy.special import erfc

import mwqi
from mwqi import (
    Hypothesis,
    ReceiverParams,
    SourceMoments,
    TargetChannelParams,
    coherent_snr_per_mode,
    entanglement_threshold,
    error_probability,
    error_probability_coherent,
    error_probability_qi,
    figure_of_merit,
    log10_error_probability,
    log_negativity,
    max_fiber_range,
    mc_receiver_statistics,
    receiver_statistics,
    return_state,
    snr_per_mode,
)

from conftest import REF_ETA


# ---------------------------------------------------------------------------
# return channel
# ---------------------------------------------------------------------------

def test_return_state_vanishing_transmissivity(ref_moments):
    ch = TargetChannelParams(eta=0.0, n_b=50.0)
    h0 = return_state(ref_moments, ch, Hypothesis.H0)
    h1 = return_state(ref_moments, ch, Hypothesis.H1)
    assert np.allclose(np.asarray(h0.cm, float), np.asarray(h1.cm, float))


def test_return_state_lossless(ref_moments):
    ch = TargetChannelParams(eta=1.0, n_b=777.0)
    h1 = return_state(ref_moments, ch, Hypothesis.H1)
    src = mwqi.source_state(ref_moments)
    assert np.allclose(np.asarray(h1.cm, float), np.asarray(src.cm, float))


def test_return_state_reference_numbers():
    # published operating point: cross_R = sqrt(0.07) * 1.084, and the
    # return occupation is dominated by the bright background
    m = SourceMoments(n_w=0.739, n_o=0.681, cross=1.084)
    ch = TargetChannelParams(eta=0.07, n_b=610.0)
    state = return_state(m, ch, Hypothesis.H1)
    cm = np.asarray(state.cm, float)
    n_r = (cm[0, 0] - 1.0) / 2
    cross_r = cm[0, 2] / 2
    assert cross_r == pytest.approx(math.sqrt(0.07) * 1.084, rel=1e-12)
    assert cross_r == pytest.approx(0.2868, abs=5e-4)
    assert n_r == pytest.approx(567.4, abs=0.1)


def test_return_cross_independent_of_background(ref_moments):
    cross = []
    occ = []
    for n_b in (10.0, 100.0, 1000.0):
        cm = np.asarray(return_state(
            ref_moments, TargetChannelParams(eta=0.05, n_b=n_b), Hypothesis.H1).cm, float)
        cross.append(cm[0, 2])
        occ.append(cm[0, 0])
    assert cross[0] == cross[1] == cross[2]
    assert occ[0] < occ[1] < occ[2]


def test_exact_h1_background_flag(ref_moments):
    eta = 0.2
    approx = TargetChannelParams(eta=eta, n_b=100.0)
    exact = TargetChannelParams(eta=eta, n_b=100.0, exact_h1_background=True)
    cm_a = np.asarray(return_state(ref_moments, approx, Hypothesis.H1).cm, float)
    cm_e = np.asarray(return_state(ref_moments, exact, Hypothesis.H1).cm, float)
    n_a = (cm_a[0, 0] - 1) / 2
    n_e = (cm_e[0, 0] - 1) / 2
    assert n_a == pytest.approx(eta * ref_moments.n_w + (1 - eta) * 100.0, rel=1e-12)
    assert n_e == pytest.approx(eta * ref_moments.n_w + 100.0, rel=1e-12)


def test_channel_validation():
    with pytest.raises(ValueError):
        TargetChannelParams(eta=1.5, n_b=1.0)
    with pytest.raises(ValueError):
        TargetChannelParams(eta=0.1, n_b=-1.0)


# ---------------------------------------------------------------------------
# entanglement threshold
# ---------------------------------------------------------------------------

def test_threshold_reference(ref_moments):
    thresh = entanglement_threshold(ref_moments, REF_ETA)
    assert abs(thresh - 0.069) / 0.069 < 0.10


def test_threshold_zero_eta(ref_moments):
    assert entanglement_threshold(ref_moments, 0.0) == 0.0


def test_threshold_separable_source_clamped():
    m = SourceMoments(n_w=1.0, n_o=1.0, cross=0.5)
    assert entanglement_threshold(m, 0.3) == 0.0


def test_threshold_separates_entangled_return(ref_moments):
    # with the exact H1 background the separability boundary sits exactly at
    # the threshold value
    thresh = entanglement_threshold(ref_moments, REF_ETA)
    for factor, entangled in ((0.8, True), (1.2, False)):
        ch = TargetChannelParams(eta=REF_ETA, n_b=factor * thresh,
                                 exact_h1_background=True)
        state = return_state(ref_moments, ch, Hypothesis.H1)
        assert (log_negativity(state) > 0.0) is entangled


# ---------------------------------------------------------------------------
# receiver statistics
# ---------------------------------------------------------------------------

def test_receiver_no_correlation_no_signal(ref_channel, ref_receiver, baths):
    m = SourceMoments(n_w=0.5, n_o=0.5, cross=0.0)
    stats = receiver_statistics(m, ref_channel, ref_receiver, baths)
    assert stats.mu1 == stats.mu0 == 0.0
    assert stats.snr_per_m == 0.0


def test_receiver_mean_shift(ref_moments, ref_channel, ref_coefficients, baths):
    stats = receiver_statistics(ref_moments, ref_channel,
                                ReceiverParams(ref_coefficients), baths)
    expected = 2.0 * ref_coefficients.b * math.sqrt(REF_ETA) * ref_moments.cross
    assert stats.mu1 - stats.mu0 == pytest.approx(expected, rel=1e-12)
    assert stats.mu1 >= stats.mu0
    assert stats.var0 > 0 and stats.var1 > 0


def test_receiver_idler_loss_kills_signal(ref_moments, ref_channel, ref_coefficients, baths):
    lossy = ReceiverParams(ref_coefficients, idler_transmissivity=1e-9)
    stats = receiver_statistics(ref_moments, ref_channel, lossy, baths)
    assert stats.snr_per_m < 1e-10
    with pytest.raises(ValueError):
        ReceiverParams(ref_coefficients, idler_transmissivity=0.0)


def test_fom_non_increasing_in_idler_loss(ref_moments, ref_channel, ref_coefficients, baths):
    foms = [figure_of_merit(ref_moments, ref_channel,
                            ReceiverParams(ref_coefficients, k), baths)
            for k in np.linspace(1.0, 0.1, 10)]
    assert all(a >= b - 1e-12 for a, b in zip(foms, foms[1:]))


def test_snr_convention_anchor():
    # the generic SNR definition applied to homodyne detection of a coherent
    # probe must reproduce 4 eta n_w / (2 n_B + 1) identically
    rng = np.random.default_rng(31)
    for _ in range(10):
        eta = rng.uniform(0.001, 0.5)
        n_w = rng.uniform(0.01, 5.0)
        n_b = rng.uniform(0.0, 1e4)
        mu1 = 2.0 * math.sqrt(eta * n_w)
        var = 2.0 * n_b + 1.0
        generic = snr_per_mode(0.0, mu1, var, var)
        quoted = 4.0 * eta * n_w / (2.0 * n_b + 1.0)
        assert abs(generic - quoted) / quoted < 1e-12


# ---------------------------------------------------------------------------
# error probabilities
# ---------------------------------------------------------------------------

def test_error_probability_blind():
    assert error_probability(0.0, 10) == 0.5
    assert error_probability(0.0, 10 ** 9) == 0.5


def test_error_probability_unit_argument():
    # M * snr = 8 puts the erfc argument at 1
    assert error_probability(8.0, 1) == pytest.approx(erfc(1.0) / 2, rel=1e-13)


def test_error_probability_matches_direct_erfc():
    # log-domain composition against the direct evaluation, down to underflow
    for snr_m in (1e-3, 1.0, 50.0, 500.0, 2500.0):
        direct = erfc(math.sqrt(snr_m / 8.0)) / 2.0
        assert error_probability(snr_m, 1) == pytest.approx(direct, rel=1e-12)


def test_error_probability_log_domain_small():
    # 1e-300-scale values stay accurate; the log form reaches further
    snr = 5500.0
    p = error_probability(snr, 1)
    assert 0.0 < p < 1e-290
    assert log10_error_probability(snr, 1) == pytest.approx(math.log10(p), rel=1e-12)
    assert log10_error_probability(snr * 100, 1) < -1e4


def test_error_probability_monotone_in_modes(ref_moments, ref_channel, ref_receiver, baths):
    stats = receiver_statistics(ref_moments, ref_channel, ref_receiver, baths)
    probs = [error_probability_qi(stats, m) for m in np.geomspace(1, 1e7, 15)]
    assert all(a > b for a, b in zip(probs, probs[1:]))


def test_error_probability_validation():
    with pytest.raises(ValueError):
        error_probability(1.0, 0.5)
    with pytest.raises(ValueError):
        error_probability(-1.0, 10)


def test_coherent_benchmark_values(ref_channel):
    snr = coherent_snr_per_mode(0.739, ref_channel)
    # direct evaluation of the benchmark formula at the published point
    assert snr == pytest.approx(4 * 0.07 * 0.739 / (2 * ref_channel.n_b + 1), rel=1e-12)
    assert snr == pytest.approx(1.694e-4, rel=2e-2)
    assert error_probability_coherent(0.0, ref_channel, 100) == 0.5
    # linear in the mode count
    p1 = coherent_snr_per_mode(0.739, ref_channel) * 1
    assert 2 * p1 == pytest.approx(coherent_snr_per_mode(0.739, ref_channel) * 2, rel=1e-15)


# ---------------------------------------------------------------------------
# figure of merit
# ---------------------------------------------------------------------------

def test_fom_zero_for_uncorrelated(ref_channel, ref_receiver, baths):
    m = SourceMoments(n_w=0.5, n_o=0.5, cross=0.0)
    assert figure_of_merit(m, ref_channel, ref_receiver, baths) == 0.0


def test_fom_reference_advantage(ref_moments, ref_channel, ref_receiver, baths):
    assert figure_of_merit(ref_moments, ref_channel, ref_receiver, baths) > 1.0


def test_fom_bright_background_asymptote(ref_moments, ref_receiver, baths):
    foms = [figure_of_merit(ref_moments,
                            TargetChannelParams(eta=REF_ETA, n_b=n_b),
                            ref_receiver, baths)
            for n_b in np.geomspace(1e2, 1e6, 9)]
    assert abs(foms[-1] - foms[-2]) / foms[-1] < 1e-3


# ---------------------------------------------------------------------------
# fiber range
# ---------------------------------------------------------------------------

def test_fiber_range_values():
    assert max_fiber_range(0.2, 2.0 / 3.0, 3.0) == pytest.approx(11.25, abs=1e-12)
    assert max_fiber_range(0.4, 2.0 / 3.0, 3.0) == pytest.approx(5.625, abs=1e-12)
    assert max_fiber_range(0.2, 2.0 / 3.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        max_fiber_range(0.0, 0.5)


# ---------------------------------------------------------------------------
# Monte-Carlo oracle
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("hypothesis", [Hypothesis.H0, Hypothesis.H1])
def test_mc_oracle_agrees_with_closed_form(ref_moments, ref_channel, ref_receiver,
                                           baths, hypothesis):
    stats = receiver_statistics(ref_moments, ref_channel, ref_receiver, baths)
    mc = mc_receiver_statistics(ref_moments, ref_channel, ref_receiver, baths,
                                hypothesis, samples=300000, seed=99)
    mu_cf = stats.mu1 if hypothesis is Hypothesis.H1 else stats.mu0
    var_cf = stats.var1 if hypothesis is Hypothesis.H1 else stats.var0
    assert abs(mc.mu - mu_cf) <= 3 * mc.se_mu
    assert abs(mc.var - var_cf) <= 3 * mc.se_var


def test_mc_oracle_deterministic(ref_moments, ref_channel, ref_receiver, baths):
    a = mc_receiver_statistics(ref_moments, ref_channel, ref_receiver, baths,
                               Hypothesis.H1, samples=10000, seed=5)
    b = mc_receiver_statistics(ref_moments, ref_channel, ref_receiver, baths,
                               Hypothesis.H1, samples=10000, seed=5)
    assert a == b
