"""Parameter-grid sweeps with stability masking, error-probability curves,
and single-point reports, all emitted as deterministic CSV or text.

Config format: flat ``key = value`` lines under ``[section]`` headers, with
``#`` comments.  Every physical quantity carries an explicit unit suffix
(hz/khz/mhz/ghz for frequencies, mk/k for temperatures, nm/um/m for lengths)
so that ordinary-frequency inputs are converted to angular rates exactly
once, inside the parser.  Dimensionless values must not carry a suffix.

Example::

    [eom]
    omega_m = 10 mhz
    t_eom = 30 mk

    [drive]
    gamma_w = 5181.95
    gamma_o = 668.43

    [channel]
    eta = 0.07
    t_b = 293 k
    kappa_i = 1.0

    [grid]
    axis = gamma_w log 1e2 1e4 25
    axis = gamma_o log 1e1 1e3 25

    [outputs]
    select = e_metric, n_w, n_o, fom, p_qi@1e6, p_coh@1e6

Omitted [eom] keys fall back to the nominal converter parameters.  A config
without a [grid] section evaluates a single point at the base values.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .converter import (
    Cooperativities,
    EomParams,
    InstabilityError,
    bath_occupations,
    coefficients,
    entanglement_metric,
    is_stable,
    nominal_params,
    planck_occupation,
    source_moments,
    source_state,
)
from .correlations import correlation_report
from .detection import (
    Hypothesis,
    ReceiverParams,
    TargetChannelParams,
    entanglement_threshold,
    error_probability,
    coherent_snr_per_mode,
    figure_of_merit,
    mc_receiver_statistics,
    receiver_statistics,
)
from .states import PhysicalityError, symplectic_spectrum

__all__ = [
    "ConfigError",
    "GridAxis",
    "SweepConfig",
    "parse_config",
    "config_sha256",
    "run_sweep",
    "run_figure3",
    "report_point",
]

_FREQ_UNITS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_TEMP_UNITS = {"mk": 1e-3, "k": 1.0}
_LENGTH_UNITS = {"nm": 1e-9, "um": 1e-6, "m": 1.0}

# key -> (section, kind); kind governs unit handling
_EOM_KEYS = {
    "omega_m": "freq", "kappa_w": "freq", "kappa_o": "freq", "omega_w": "freq",
    "g_w": "freq", "g_o": "freq", "q_factor": "plain", "lambda_o": "length",
    "t_eom": "temp",
}
_AXIS_NAMES = ("gamma_w", "gamma_o", "eta", "t_b", "t_eom", "kappa_i")
_PLAIN_OUTPUTS = ("n_w", "n_o", "e_metric", "log_neg_per_photon",
                  "coh_info_per_photon", "discord_per_photon", "fom")


class ConfigError(ValueError):
    """Config parse or validation failure, with line/field diagnostics."""

    def __init__(self, message: str, line: int | None = None, field_name: str | None = None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field_name is not None:
            loc.append(f"field '{field_name}'")
        super().__init__(f"{', '.join(loc)}: {message}" if loc else message)
        self.line = line
        self.field_name = field_name


@dataclass(frozen=True)
class GridAxis:
    name: str
    spacing: str  # "lin" | "log"
    lo: float
    hi: float
    count: int

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepConfig:
    params: EomParams
    gamma_w: float | None
    gamma_o: float | None
    eta: float | None
    t_b: float | None
    n_b: float | None
    kappa_i: float
    exact_h1: bool
    axes: tuple[GridAxis, ...]
    outputs: tuple[str, ...]
    m_min: float
    m_max: float
    m_points: int
    seed: int
    mc_validation: bool
    mc_samples: int
    sha256: str = field(default="", compare=False)


def config_sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _parse_quantity(raw: str, kind: str, line: int, key: str) -> float:
    parts = raw.split()
    if kind == "plain":
        if len(parts) != 1:
            raise ConfigError(f"dimensionless value must not carry a unit: {raw!r}",
                              line, key)
        try:
            return float(parts[0])
        except ValueError:
            raise ConfigError(f"not a number: {raw!r}", line, key) from None
    units = {"freq": _FREQ_UNITS, "temp": _TEMP_UNITS, "length": _LENGTH_UNITS}[kind]
    if len(parts) != 2 or parts[1].lower() not in units:
        raise ConfigError(
            f"expected '<number> <{'|'.join(units)}>', got {raw!r}", line, key)
    try:
        value = float(parts[0])
    except ValueError:
        raise ConfigError(f"not a number: {parts[0]!r}", line, key) from None
    scaled = value * units[parts[1].lower()]
    if kind == "freq":
        scaled *= 2.0 * math.pi  # stored angular
    return scaled


def _parse_output_token(token: str, line: int) -> str:
    if token in _PLAIN_OUTPUTS:
        return token
    for prefix in ("p_qi@", "p_coh@"):
        if token.startswith(prefix):
            try:
                m = float(token[len(prefix):])
            except ValueError:
                raise ConfigError(f"bad mode count in output {token!r}", line, "select") from None
            if m < 1:
                raise ConfigError(f"mode count must be >= 1 in {token!r}", line, "select")
            return token
    raise ConfigError(f"unknown output {token!r} (known: {', '.join(_PLAIN_OUTPUTS)}, "
                      "p_qi@<M>, p_coh@<M>)", line, "select")


def parse_config(text: str) -> SweepConfig:
    """Parse a sweep config; raises :class:`ConfigError` with diagnostics."""
    section = None
    eom_overrides: dict[str, float] = {}
    drive: dict[str, float] = {}
    channel: dict[str, float | bool] = {}
    axes: list[GridAxis] = []
    outputs: list[str] = []
    fig3: dict[str, float] = {}
    mc: dict[str, float | bool] = {}

    for lineno, rawline in enumerate(text.splitlines(), start=1):
        stripped = rawline.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1].strip().lower()
            if section not in ("eom", "drive", "channel", "grid", "outputs", "fig3", "mc"):
                raise ConfigError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", lineno)
        if section is None:
            raise ConfigError("key outside any [section]", lineno)
        key, _, raw = stripped.partition("=")
        key, raw = key.strip().lower(), raw.strip()

        if section == "eom":
            if key not in _EOM_KEYS:
                raise ConfigError(f"unknown converter parameter {key!r}", lineno, key)
            eom_overrides[key] = _parse_quantity(raw, _EOM_KEYS[key], lineno, key)
        elif section == "drive":
            if key not in ("gamma_w", "gamma_o"):
                raise ConfigError(f"unknown drive parameter {key!r}", lineno, key)
            drive[key] = _parse_quantity(raw, "plain", lineno, key)
        elif section == "channel":
            if key == "eta":
                channel["eta"] = _parse_quantity(raw, "plain", lineno, key)
            elif key == "t_b":
                channel["t_b"] = _parse_quantity(raw, "temp", lineno, key)
            elif key == "n_b":
                channel["n_b"] = _parse_quantity(raw, "plain", lineno, key)
            elif key == "kappa_i":
                channel["kappa_i"] = _parse_quantity(raw, "plain", lineno, key)
            elif key == "exact_h1":
                if raw.lower() not in ("on", "off"):
                    raise ConfigError("exact_h1 must be 'on' or 'off'", lineno, key)
                channel["exact_h1"] = raw.lower() == "on"
            else:
                raise ConfigError(f"unknown channel parameter {key!r}", lineno, key)
        elif section == "grid":
            if key != "axis":
                raise ConfigError("grid section accepts only 'axis' entries", lineno, key)
            parts = raw.split()
            if len(parts) != 5:
                raise ConfigError(
                    f"axis needs '<name> <lin|log> <min> <max> <count>', got {raw!r}",
                    lineno, key)
            name, spacing = parts[0].lower(), parts[1].lower()
            if name not in _AXIS_NAMES:
                raise ConfigError(f"unknown axis {name!r} (known: {', '.join(_AXIS_NAMES)})",
                                  lineno, key)
            if spacing not in ("lin", "log"):
                raise ConfigError(f"spacing must be lin or log, got {spacing!r}", lineno, key)
            try:
                lo, hi, count = float(parts[2]), float(parts[3]), int(parts[4])
            except ValueError:
                raise ConfigError(f"bad axis numbers in {raw!r}", lineno, key) from None
            if lo <= 0 or hi <= 0 or lo >= hi:
                raise ConfigError("axis bounds must be positive and ordered", lineno, key)
            if count < 2:
                raise ConfigError("axis point count must be >= 2", lineno, key)
            axes.append(GridAxis(name, spacing, lo, hi, count))
        elif section == "outputs":
            if key != "select":
                raise ConfigError("outputs section accepts only 'select'", lineno, key)
            for token in (t.strip() for t in raw.split(",")):
                if token:
                    outputs.append(_parse_output_token(token, lineno))
        elif section == "fig3":
            if key not in ("m_min", "m_max", "m_points"):
                raise ConfigError(f"unknown fig3 parameter {key!r}", lineno, key)
            fig3[key] = _parse_quantity(raw, "plain", lineno, key)
        elif section == "mc":
            if key == "validation":
                if raw.lower() not in ("on", "off"):
                    raise ConfigError("validation must be 'on' or 'off'", lineno, key)
                mc["validation"] = raw.lower() == "on"
            elif key in ("seed", "samples"):
                mc[key] = _parse_quantity(raw, "plain", lineno, key)
            else:
                raise ConfigError(f"unknown mc parameter {key!r}", lineno, key)

    base = nominal_params()
    params = dataclasses.replace(base, **eom_overrides) if eom_overrides else base
    if "t_b" in channel and "n_b" in channel:
        raise ConfigError("give either t_b or n_b, not both", field_name="t_b")
    axis_names = [a.name for a in axes]
    if len(set(axis_names)) != len(axis_names):
        raise ConfigError("duplicate axis names")

    m_points = int(fig3.get("m_points", 41))
    if m_points < 1:
        raise ConfigError("m_points must be >= 1", field_name="m_points")
    m_min = float(fig3.get("m_min", 1e4))
    m_max = float(fig3.get("m_max", 1e8))
    if m_min < 1 or m_max < m_min:
        raise ConfigError("need 1 <= m_min <= m_max", field_name="m_min")

    return SweepConfig(
        params=params,
        gamma_w=drive.get("gamma_w"),
        gamma_o=drive.get("gamma_o"),
        eta=channel.get("eta"),
        t_b=channel.get("t_b"),
        n_b=channel.get("n_b"),
        kappa_i=float(channel.get("kappa_i", 1.0)),
        exact_h1=bool(channel.get("exact_h1", False)),
        axes=tuple(axes),
        outputs=tuple(outputs),
        m_min=m_min,
        m_max=m_max,
        m_points=m_points,
        seed=int(mc.get("seed", 0)),
        mc_validation=bool(mc.get("validation", False)),
        mc_samples=int(mc.get("samples", 10 ** 6)),
        sha256=config_sha256(text),
    )


# ---------------------------------------------------------------------------
# point evaluation
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    # 17 significant digits: enough to round-trip any double exactly
    return f"{x:.16e}"


@dataclass(frozen=True)
class _Point:
    """One grid point after axis overrides."""

    params: EomParams
    coop: Cooperativities
    eta: float | None
    n_b: float | None
    kappa_i: float
    exact_h1: bool

    def channel(self) -> TargetChannelParams:
        if self.eta is None or self.n_b is None:
            raise ConfigError("channel outputs selected but [channel] eta/t_b missing",
                              field_name="eta")
        return TargetChannelParams(eta=self.eta, n_b=self.n_b,
                                   exact_h1_background=self.exact_h1)


def _resolve_point(config: SweepConfig, overrides: dict[str, float]) -> _Point:
    params = config.params
    if "t_eom" in overrides:
        params = dataclasses.replace(params, t_eom=overrides["t_eom"])
    gamma_w = overrides.get("gamma_w", config.gamma_w)
    gamma_o = overrides.get("gamma_o", config.gamma_o)
    if gamma_w is None or gamma_o is None:
        raise ConfigError("gamma_w and gamma_o must come from [drive] or a grid axis",
                          field_name="gamma_w")
    eta = overrides.get("eta", config.eta)
    t_b = overrides.get("t_b", config.t_b)
    if config.n_b is not None:
        n_b = config.n_b
    elif t_b is not None:
        n_b = planck_occupation(params.omega_w, t_b)
    else:
        n_b = None
    kappa_i = overrides.get("kappa_i", config.kappa_i)
    return _Point(params=params, coop=Cooperativities(gamma_w, gamma_o),
                  eta=eta, n_b=n_b, kappa_i=kappa_i, exact_h1=config.exact_h1)


def _evaluate_outputs(point: _Point, outputs: tuple[str, ...]) -> dict[str, float]:
    """Metric values for one stable grid point; may raise physics errors."""
    coef = coefficients(point.coop)
    baths = bath_occupations(point.params)
    m = source_moments(coef, baths.n_w, baths.n_o, baths.n_b)
    values: dict[str, float] = {}
    report = None
    stats = None
    for token in outputs:
        if token == "n_w":
            values[token] = m.n_w
        elif token == "n_o":
            values[token] = m.n_o
        elif token == "e_metric":
            values[token] = 0.0 if m.cross == 0.0 else entanglement_metric(m)
        elif token in ("log_neg_per_photon", "coh_info_per_photon", "discord_per_photon"):
            if report is None:
                report = correlation_report(m)
            values[token] = getattr(report, token)
        else:
            ch = point.channel()
            if token == "fom":
                values[token] = figure_of_merit(
                    m, ch, ReceiverParams(coef, point.kappa_i), baths)
            else:
                if stats is None:
                    stats = receiver_statistics(
                        m, ch, ReceiverParams(coef, point.kappa_i), baths)
                kind, _, m_str = token.partition("@")
                modes = float(m_str)
                if kind == "p_qi":
                    values[token] = error_probability(stats.snr_per_m, modes)
                else:
                    values[token] = error_probability(
                        coherent_snr_per_mode(m.n_w, ch), modes)
    return values


def _meta_lines(config: SweepConfig) -> list[str]:
    return [
        f"# mwqi {__version__}",
        f"# config-sha256={config.sha256}",
        f"# seed={config.seed}",
    ]


def run_sweep(config: SweepConfig, threads: int = 1) -> str:
    """Evaluate the grid and return the CSV text.

    One row per grid point in row-major order (first axis slowest).  Unstable
    points keep their stability flag and margin but leave the metric cells
    empty; a failure at one point lands in the ``error`` column and never
    aborts the sweep.  Output is byte-identical for identical config and
    seed.
    """
    if not config.outputs:
        raise ConfigError("no outputs selected", field_name="select")
    axis_values = [axis.values() for axis in config.axes]
    shape = tuple(len(v) for v in axis_values)
    total = int(np.prod(shape)) if shape else 1

    def eval_index(flat: int) -> str:
        idx = np.unravel_index(flat, shape) if shape else ()
        overrides = {axis.name: float(vals[i])
                     for axis, vals, i in zip(config.axes, axis_values, idx)}
        cells = [_fmt(overrides[axis.name]) for axis in config.axes]
        error = ""
        metric_cells = [""] * len(config.outputs)
        try:
            point = _resolve_point(config, overrides)
            stability = is_stable(point.coop, point.params)
            cells.append("1" if stability.stable else "0")
            cells.append(_fmt(stability.margin))
            if stability.stable:
                values = _evaluate_outputs(point, config.outputs)
                metric_cells = [_fmt(values[t]) for t in config.outputs]
        except ConfigError:
            raise
        except Exception as exc:  # recorded per point, sweep continues
            error = f"{type(exc).__name__}: {exc}".replace(",", ";").replace("\n", " ")
            if len(cells) == len(config.axes):
                cells += ["", ""]
        return ",".join(cells + metric_cells + [error])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(eval_index, range(total)))
    else:
        rows = [eval_index(i) for i in range(total)]

    header = [a.name for a in config.axes] + ["stable", "margin"] + list(config.outputs) + ["error"]
    return "\n".join(_meta_lines(config) + [",".join(header)] + rows) + "\n"


def run_figure3(config: SweepConfig) -> str:
    """Error probabilities of both systems versus the mode-pair count M.

    Columns: m, p_qi, p_coh, fom.  Requires a stable base operating point and
    a channel; probabilities are evaluated in the log domain.
    """
    point = _resolve_point(config, {})
    stability = is_stable(point.coop, point.params)
    if not stability.stable:
        raise InstabilityError(
            f"base operating point is unstable (margin {stability.margin!r})")
    coef = coefficients(point.coop)
    baths = bath_occupations(point.params)
    m = source_moments(coef, baths.n_w, baths.n_o, baths.n_b)
    ch = point.channel()
    rx = ReceiverParams(coef, point.kappa_i)
    stats = receiver_statistics(m, ch, rx, baths)
    snr_coh = coherent_snr_per_mode(m.n_w, ch)
    fom = stats.snr_per_m / snr_coh if snr_coh > 0 else 0.0

    if config.m_points == 1:
        m_grid = np.array([config.m_min])
    else:
        m_grid = np.geomspace(config.m_min, config.m_max, config.m_points)
    rows = []
    for modes in m_grid:
        rows.append(",".join([
            _fmt(float(modes)),
            _fmt(error_probability(stats.snr_per_m, float(modes))),
            _fmt(error_probability(snr_coh, float(modes))),
            _fmt(fom),
        ]))
    return "\n".join(_meta_lines(config) + ["m,p_qi,p_coh,fom"] + rows) + "\n"


def report_point(config: SweepConfig, mc: bool | None = None) -> tuple[str, bool]:
    """Human-readable report of one operating point.

    Returns (text, ok).  ``ok`` is True when every internal invariant holds
    (and, with Monte-Carlo validation on, every sampled statistic agrees with
    its closed form within 3 standard errors).  Raises
    :class:`InstabilityError` for an unstable point.
    """
    point = _resolve_point(config, {})
    stability = is_stable(point.coop, point.params)
    if not stability.stable:
        raise InstabilityError(
            f"operating point unstable, margin {stability.margin!r} rad/s")
    run_mc = config.mc_validation if mc is None else mc

    lines: list[str] = []
    checks: list[tuple[str, bool]] = []

    def check(name: str, ok: bool):
        checks.append((name, ok))

    coef = coefficients(point.coop)
    baths = bath_occupations(point.params)
    m = source_moments(coef, baths.n_w, baths.n_o, baths.n_b)

    lines.append("== operating point ==")
    lines.append(f"gamma_w = {point.coop.gamma_w:.6g}   gamma_o = {point.coop.gamma_o:.6g}")
    lines.append(f"t_eom = {point.params.t_eom:.6g} K")
    lines.append(f"stable: yes (margin {stability.margin:.6g} rad/s, "
                 f"adiabatic criterion {'holds' if stability.adiabatic_stable else 'violated'})")
    lines.append("")
    lines.append("== converter coefficients ==")
    lines.append(f"a_w = {coef.a_w:.9g} (sign {coef.sign_w:+.0f})   a_o = {coef.a_o:.9g}")
    lines.append(f"b = {coef.b:.9g}   c_w = {coef.c_w:.9g}   c_o = {coef.c_o:.9g}")
    res_w = coef.a_w ** 2 - coef.b ** 2 + coef.c_w ** 2 - 1.0
    res_o = coef.a_o ** 2 - coef.b ** 2 - coef.c_o ** 2 - 1.0
    lines.append(f"commutator residuals: {res_w:.3e}, {res_o:.3e}")
    check("commutator identities", abs(res_w) < 1e-10 and abs(res_o) < 1e-10)
    lines.append("")
    lines.append("== bath occupations ==")
    lines.append(f"n_w^T = {baths.n_w:.6g}   n_o^T = {baths.n_o:.6g}   n_b^T = {baths.n_b:.6g}")
    lines.append("")
    lines.append("== source moments ==")
    lines.append(f"n_w = {m.n_w:.9g}   n_o = {m.n_o:.9g}   |<d_w d_o>| = {m.cross:.9g}")
    try:
        state = source_state(m)
        spec_data = symplectic_spectrum(state)
        lines.append(f"symplectic spectrum: nu+ = {spec_data.nu_plus:.9g}, "
                     f"nu- = {spec_data.nu_minus:.9g}, ppt nu- = {spec_data.nu_ppt_minus:.9g}")
        check("source state physical", spec_data.nu_minus >= 1.0 - 1e-9)
    except PhysicalityError as exc:
        lines.append(f"source state NOT physical: {exc}")
        check("source state physical", False)
        state = None

    report = correlation_report(m)
    lines.append("")
    lines.append("== correlations ==")
    lines.append(f"E-metric = {report.e_metric:.9g}")
    lines.append(f"E_N = {report.log_neg:.9g} ebits "
                 f"({report.log_neg_per_photon:.9g} per photon)")
    lines.append(f"I = {report.coh_info:.9g} qubits "
                 f"({report.coh_info_per_photon:.9g} per photon)")
    lines.append(f"D = {report.discord:.9g} bits "
                 f"({report.discord_per_photon:.9g} per photon)")
    check("discord >= 0", report.discord >= 0.0)
    if abs(report.e_metric - 1.0) > 1e-6:
        check("E-metric/negativity agreement",
              (report.e_metric > 1.0) == (report.log_neg > 0.0))

    if point.eta is not None and point.n_b is not None:
        ch = point.channel()
        rx = ReceiverParams(coef, point.kappa_i)
        stats = receiver_statistics(m, ch, rx, baths)
        thresh = entanglement_threshold(m, ch.eta)
        snr_coh = coherent_snr_per_mode(m.n_w, ch)
        fom = stats.snr_per_m / snr_coh if snr_coh > 0 else 0.0
        lines.append("")
        lines.append("== target channel ==")
        lines.append(f"eta = {ch.eta:.6g}   n_B = {ch.n_b:.6g}   kappa_I = {point.kappa_i:.6g}")
        lines.append(f"entanglement threshold n_B^thresh = {thresh:.6g}")
        lines.append("")
        lines.append("== detection ==")
        lines.append(f"mu0 = {stats.mu0:.9g}   mu1 = {stats.mu1:.9g}")
        lines.append(f"var0 = {stats.var0:.9g}   var1 = {stats.var1:.9g}")
        lines.append(f"snr per mode pair = {stats.snr_per_m:.9g}")
        lines.append(f"figure of merit F = {fom:.9g}")
        for modes in (1e4, 1e5, 1e6, 1e7, 1e8):
            p_qi = error_probability(stats.snr_per_m, modes)
            p_coh = error_probability(coherent_snr_per_mode(m.n_w, ch), modes)
            lines.append(f"M = {modes:.0e}:  P_QI = {p_qi:.6e}   P_coh = {p_coh:.6e}")
        blind = stats.mu0 == stats.mu1 == 0.0 and stats.snr_per_m == 0.0
        check("variances positive", (stats.var0 > 0 and stats.var1 > 0) or blind)
        check("mu1 >= mu0", stats.mu1 >= stats.mu0)

        if run_mc:
            lines.append("")
            lines.append(f"== Monte-Carlo validation ({config.mc_samples} samples) ==")
            for hyp in (Hypothesis.H0, Hypothesis.H1):
                mc_stats = mc_receiver_statistics(
                    m, ch, rx, baths, hyp,
                    samples=config.mc_samples, seed=config.seed + (hyp is Hypothesis.H1))
                mu_cf = stats.mu1 if hyp is Hypothesis.H1 else stats.mu0
                var_cf = stats.var1 if hyp is Hypothesis.H1 else stats.var0
                dmu = abs(mc_stats.mu - mu_cf) / mc_stats.se_mu
                dvar = abs(mc_stats.var - var_cf) / mc_stats.se_var
                lines.append(f"{hyp.value}: mean delta {dmu:.2f} se, variance delta {dvar:.2f} se")
                check(f"mc {hyp.value} mean within 3 se", dmu <= 3.0)
                check(f"mc {hyp.value} variance within 3 se", dvar <= 3.0)

    ok = all(flag for _, flag in checks)
    lines.append("")
    lines.append("== invariant checks ==")
    for name, flag in checks:
        lines.append(f"[{'ok' if flag else 'FAIL'}] {name}")
    lines.append(f"result: {'all checks passed' if ok else 'CHECKS FAILED'}")
    return "\n".join(lines) + "\n", ok
