"""Quantum-correlation measures of the source: logarithmic negativity,
coherent information, and Gaussian discord, with per-microwave-photon
normalizations.

Base-2 logarithms throughout: negativity in ebits, coherent information in
qubits, discord in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .converter import SourceMoments, UndefinedMetricError, entanglement_metric, source_state
from .states import TwoModeGaussianState, entropy, symplectic_spectrum

__all__ = [
    "DiscordConvergenceError",
    "CorrelationReport",
    "log_negativity",
    "coherent_information",
    "gaussian_discord",
    "correlation_report",
]


class DiscordConvergenceError(RuntimeError):
    """Raised when the discord measurement optimization fails to converge."""

    def __init__(self, best_value: float, gradient_norm: float):
        super().__init__(
            f"discord minimizer did not converge; best value {best_value!r}, "
            f"gradient norm {gradient_norm!r}"
        )
        self.best_value = best_value
        self.gradient_norm = gradient_norm


@dataclass(frozen=True)
class CorrelationReport:
    """All correlation measures of a source, with n_w-normalized companions."""

    e_metric: float
    log_neg: float
    coh_info: float
    discord: float
    log_neg_per_photon: float
    coh_info_per_photon: float
    discord_per_photon: float


def log_negativity(state: TwoModeGaussianState) -> float:
    """Logarithmic negativity E_N = max(0, -log2(nu_ppt_minus)) in ebits."""
    nu = symplectic_spectrum(state).nu_ppt_minus
    if nu <= 0:
        raise ValueError(f"degenerate partial-transpose eigenvalue {nu!r}")
    return max(0.0, -math.log2(nu))


def coherent_information(state: TwoModeGaussianState) -> float:
    """Coherent information I(2>1) = S(rho_1) - S(rho_12) in qubits.

    S(rho_1) is the entropy of the reduced first mode, g(sqrt(det A)); the
    joint entropy is g(nu_plus) + g(nu_minus).  May be negative.
    """
    data = symplectic_spectrum(state)
    cm = state.cm
    det_a = float(cm[0, 0] * cm[1, 1] - cm[0, 1] * cm[1, 0])
    local = math.sqrt(max(det_a, 1.0))
    return entropy(local) - entropy(data.nu_plus) - entropy(data.nu_minus)


def _conditional_entropy(kept, coupling, measured, log_s, theta):
    """Entropy of the kept mode after a Gaussian measurement on the other.

    The measurement is parameterized by the seed covariance
    R(theta) diag(s, 1/s) R(theta)^T; s -> 1 is heterodyne, s -> 0 or inf
    approaches homodyne at angle theta.  The post-measurement covariance of
    the kept mode, kept - C (measured + seed)^-1 C^T, is outcome independent.
    """
    s = math.exp(log_s)
    cth, sth = math.cos(theta), math.sin(theta)
    rot = np.array([[cth, sth], [-sth, cth]])
    seed = rot @ np.diag([s, 1.0 / s]) @ rot.T
    m = measured + seed
    det_m = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    inv_m = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det_m
    post = kept - coupling @ inv_m @ coupling.T
    det_post = post[0, 0] * post[1, 1] - post[0, 1] * post[1, 0]
    return entropy(math.sqrt(max(det_post, 1.0)))


_LOG_S_BOUNDS = (math.log(1e-4), math.log(1e4))


def gaussian_discord(state: TwoModeGaussianState, measured_mode: int = 1,
                     extra_starts: int = 0, seed: int = 0) -> float:
    """Gaussian quantum discord with the measurement on ``measured_mode``.

    D = g(sqrt(det B)) - g(nu_plus) - g(nu_minus) + min over single-mode
    Gaussian measurements of the conditional entropy of the kept mode, where
    B is the measured mode's block.  The minimum is found by a coarse scan
    over the measurement squeezing (log-uniform in [1e-4, 1e4]) and angle,
    polished with Nelder-Mead from the best starts; ``extra_starts`` adds
    seeded random restarts.

    With the default ``measured_mode=1`` and a source state built as
    (microwave, optical) this is the discord of the microwave arm conditioned
    on measuring the retained optical idler.
    """
    if measured_mode not in (0, 1):
        raise ValueError("measured_mode must be 0 or 1")
    data = symplectic_spectrum(state)
    cm = np.asarray(state.cm, dtype=float)
    if measured_mode == 1:
        kept, measured, coupling = cm[:2, :2], cm[2:, 2:], cm[:2, 2:]
    else:
        kept, measured, coupling = cm[2:, 2:], cm[:2, :2], cm[2:, :2]
    det_meas = measured[0, 0] * measured[1, 1] - measured[0, 1] * measured[1, 0]
    base = (entropy(math.sqrt(max(det_meas, 1.0)))
            - entropy(data.nu_plus) - entropy(data.nu_minus))

    fun = lambda x: _conditional_entropy(kept, coupling, measured, x[0], x[1])

    starts = [(ls, th)
              for ls in np.linspace(*_LOG_S_BOUNDS, 9)
              for th in np.linspace(0.0, math.pi, 4, endpoint=False)]
    if extra_starts:
        rng = np.random.default_rng(seed)
        lo, hi = _LOG_S_BOUNDS
        starts += [(rng.uniform(lo, hi), rng.uniform(0.0, math.pi))
                   for _ in range(extra_starts)]
    coarse = sorted(starts, key=fun)[:3]

    best = math.inf
    converged = False
    for x0 in coarse:
        res = minimize(fun, x0, method="Nelder-Mead",
                       options=dict(xatol=1e-10, fatol=1e-14, maxiter=4000))
        converged = converged or res.success
        best = min(best, float(res.fun))
    if not converged:
        h = 1e-6
        x = min(coarse, key=fun)
        grad = math.hypot((fun((x[0] + h, x[1])) - fun((x[0] - h, x[1]))) / (2 * h),
                          (fun((x[0], x[1] + h)) - fun((x[0], x[1] - h))) / (2 * h))
        raise DiscordConvergenceError(base + best, grad)

    value = base + best
    # discord is nonnegative for every physical state; lift rounding noise only
    return 0.0 if -1e-8 < value < 0.0 else value


def correlation_report(m: SourceMoments) -> CorrelationReport:
    """Assemble all correlation measures of a source and normalize by n_w."""
    if m.n_w <= 0:
        raise UndefinedMetricError("normalization undefined at n_w = 0")
    state = source_state(m)
    # an uncorrelated source has metric 0 even when one marginal is empty
    e = 0.0 if m.cross == 0.0 else entanglement_metric(m)
    en = log_negativity(state)
    info = coherent_information(state)
    disc = gaussian_discord(state, measured_mode=1)
    return CorrelationReport(
        e_metric=e,
        log_neg=en,
        coh_info=info,
        discord=disc,
        log_neg_per_photon=en / m.n_w,
        coh_info_per_photon=info / m.n_w,
        discord_per_photon=disc / m.n_w,
    )
