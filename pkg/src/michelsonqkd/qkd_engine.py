"""Analytic weak-coherent-pulse BB84 performance model with decoy bounds.

The model works at the gain/QBER level. A pulse of mean photon number mu
arriving through total transmittance eta is detected with probability
Q = Y0 + 1 - exp(-eta mu), where Y0 is the background yield of the
detector bank; errors are half of the background counts plus an optical
misalignment fraction e_opt of the true counts. A vacuum-plus-weak decoy
analysis turns the two measured (gain, QBER) pairs into a lower bound on
the single-photon yield and an upper bound on its error, and the secure
rate uses the standard one-way post-processing expression with a constant
error-correction inefficiency.

A drift-aware session simulator layers a phase random walk with periodic
compensation and per-bin counting statistics on top of the analytic model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

#: error fraction of background (dark) counts: they land on either bit value
E0 = 0.5
#: default basis-sifting factor for symmetric basis choice
DEFAULT_SIFTING = 0.5
#: default error-correction inefficiency relative to the Shannon limit
DEFAULT_F_EC = 1.16


@dataclass(frozen=True)
class SourceConfig:
    """Pulsed weak-coherent source with signal, decoy and vacuum intensities.

    state_ratio gives the relative pulse counts of (signal, decoy, vacuum).
    """

    mu_signal: float = 0.6
    mu_decoy: float = 0.2
    state_ratio: tuple[int, int, int] = (6, 1, 1)
    rep_rate_hz: float = 100e6
    pulse_width_s: float = 500e-12

    def __post_init__(self) -> None:
        if not self.mu_signal > self.mu_decoy > 0.0:
            raise ValueError("need mu_signal > mu_decoy > 0")
        if any(w <= 0 for w in self.state_ratio):
            raise ValueError("state_ratio weights must be positive")
        if self.rep_rate_hz <= 0.0 or self.pulse_width_s <= 0.0:
            raise ValueError("rep_rate_hz and pulse_width_s must be positive")

    @property
    def signal_fraction(self) -> float:
        return self.state_ratio[0] / sum(self.state_ratio)

    @property
    def decoy_fraction(self) -> float:
        return self.state_ratio[1] / sum(self.state_ratio)

    @property
    def vacuum_fraction(self) -> float:
        return self.state_ratio[2] / sum(self.state_ratio)


@dataclass(frozen=True)
class ChannelConfig:
    """Fiber channel: length, per-km attenuation, and extra fixed loss.

    fixed_loss_db models an in-line attenuator used to emulate additional
    fiber.
    """

    length_km: float
    loss_db_per_km: float
    fixed_loss_db: float = 0.0

    def __post_init__(self) -> None:
        if self.length_km < 0 or self.loss_db_per_km < 0 or self.fixed_loss_db < 0:
            raise ValueError("channel parameters must be non-negative")

    @property
    def total_loss_db(self) -> float:
        return self.length_km * self.loss_db_per_km + self.fixed_loss_db


@dataclass(frozen=True)
class DetectorConfig:
    """Gated single-photon detector bank at the receiver."""

    efficiency: float = 0.1
    dark_count_per_gate: float = 1e-6
    gate_width_s: float = 1e-9
    num_detectors: int = 4
    receiver_insertion_loss_db: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError("efficiency must be in [0, 1]")
        if not 0.0 <= self.dark_count_per_gate <= 1.0:
            raise ValueError("dark_count_per_gate must be in [0, 1]")
        if self.gate_width_s <= 0.0:
            raise ValueError("gate_width_s must be positive")
        if self.num_detectors < 1:
            raise ValueError("num_detectors must be at least 1")
        if self.receiver_insertion_loss_db < 0.0:
            raise ValueError("receiver_insertion_loss_db must be non-negative")

    @property
    def background_yield(self) -> float:
        """Probability that at least one detector fires with no photon present."""
        return 1.0 - (1.0 - self.dark_count_per_gate) ** self.num_detectors


@dataclass(frozen=True)
class DriftModel:
    """Slow interferometric phase drift with periodic active compensation.

    The phase error random-walks with per-bin standard deviation
    phase_sigma and is pulled back into +/- compensation_residual every
    compensation_interval bins (0 disables compensation).
    """

    phase_sigma: float = 0.04
    compensation_interval: int = 5
    compensation_residual: float = 0.02

    def __post_init__(self) -> None:
        if self.phase_sigma < 0 or self.compensation_residual < 0:
            raise ValueError("drift magnitudes must be non-negative")
        if self.compensation_interval < 0:
            raise ValueError("compensation_interval must be non-negative")


@dataclass(frozen=True)
class KeyRateResult:
    """Gains, QBERs, decoy bounds and the resulting secure rate."""

    q_gain_signal: float
    q_gain_decoy: float
    qber_signal: float
    qber_decoy: float
    y1_lower: float
    e1_upper: float
    secure_rate_bps: float
    qber_observed: float
    clamped: bool = False


def channel_transmittance(ch: ChannelConfig, det: DetectorConfig) -> float:
    """Whole-link photon survival probability, detector efficiency included."""
    loss_db = ch.total_loss_db + det.receiver_insertion_loss_db
    return 10.0 ** (-loss_db / 10.0) * det.efficiency


def binary_entropy(x: float) -> float:
    """H2(x) in bits, with the 0 log 0 = 0 convention."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("binary entropy argument must be in [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def gain_and_qber(
    mu: float, eta: float, det: DetectorConfig, e_opt: float
) -> tuple[float, float]:
    """Detection probability and error fraction at mean photon number mu.

    eta is the whole-link transmittance including detector efficiency.
    Background counts err half the time; true counts err with probability
    e_opt.
    """
    if mu < 0:
        raise ValueError("mu must be non-negative")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must be in [0, 1]")
    if not 0.0 <= e_opt <= E0:
        raise ValueError("e_opt must be in [0, 1/2]")
    y0 = det.background_yield
    signal = -math.expm1(-eta * mu)
    q = y0 + signal
    if q <= 0.0:
        return 0.0, E0
    return q, (E0 * y0 + e_opt * signal) / q


@dataclass(frozen=True)
class DecoyBounds:
    """Single-photon yield lower bound and error upper bound."""

    y1_lower: float
    e1_upper: float
    clamped: bool


def decoy_bounds(
    signal: tuple[float, float],
    decoy: tuple[float, float],
    y0: float,
    mu: float,
    nu: float,
) -> DecoyBounds:
    """Vacuum-plus-weak decoy estimate of the single-photon contribution.

    ``signal`` and ``decoy`` are (gain, QBER) pairs measured at intensities
    mu and nu with mu > nu > 0. The returned yield bound is clamped into
    [0, 1]; the error bound is clamped into [0, 1/2], 1/2 being the most
    pessimistic value the rate formula can consume. ``clamped`` records
    whether any clamp (or a degenerate yield) fired.
    """
    if not (math.isfinite(mu) and math.isfinite(nu) and mu > nu > 0.0):
        raise ValueError("need mu > nu > 0")
    q_mu = signal[0]
    q_nu, e_nu = decoy
    if q_mu < 0.0 or q_nu < 0.0:
        raise ValueError("gains must be non-negative")
    if not 0.0 <= y0 <= 1.0:
        raise ValueError("y0 must be in [0, 1]")
    clamped = False
    y1 = (mu / (mu * nu - nu * nu)) * (
        q_nu * math.exp(nu)
        - q_mu * math.exp(mu) * nu**2 / mu**2
        - (mu**2 - nu**2) / mu**2 * y0
    )
    if y1 < 0.0:
        y1, clamped = 0.0, True
    elif y1 > 1.0:
        y1, clamped = 1.0, True
    if y1 * nu <= 0.0:
        return DecoyBounds(y1, E0, True)
    e1 = (e_nu * q_nu * math.exp(nu) - E0 * y0) / (y1 * nu)
    if e1 < 0.0:
        e1, clamped = 0.0, True
    elif e1 > E0:
        e1, clamped = E0, True
    return DecoyBounds(y1, e1, clamped)


def secure_key_rate(
    res: KeyRateResult,
    src: SourceConfig,
    sifting: float = DEFAULT_SIFTING,
    f_ec: float = DEFAULT_F_EC,
) -> float:
    """Distillable bits per second from gains and decoy bounds, clamped at 0.

    Per signal pulse the rate is
    sifting * signal_fraction * (Q1 (1 - H2(e1)) - f_ec Q_mu H2(E_mu))
    with Q1 = y1_lower * mu * exp(-mu), scaled by the repetition rate.
    """
    if f_ec < 1.0:
        raise ValueError("f_ec must be at least 1")
    if not 0.0 < sifting <= 1.0:
        raise ValueError("sifting must be in (0, 1]")
    q = sifting * src.signal_fraction
    q1 = res.y1_lower * src.mu_signal * math.exp(-src.mu_signal)
    per_pulse = q * (
        q1 * (1.0 - binary_entropy(res.e1_upper))
        - f_ec * res.q_gain_signal * binary_entropy(res.qber_signal)
    )
    return max(0.0, per_pulse * src.rep_rate_hz)


def analytic_operating_point(
    src: SourceConfig,
    ch: ChannelConfig,
    det: DetectorConfig,
    e_opt: float,
    *,
    sifting: float = DEFAULT_SIFTING,
    f_ec: float = DEFAULT_F_EC,
) -> KeyRateResult:
    """Noise-free operating point: gains, decoy bounds and secure rate."""
    eta = channel_transmittance(ch, det)
    q_mu, e_mu = gain_and_qber(src.mu_signal, eta, det, e_opt)
    q_nu, e_nu = gain_and_qber(src.mu_decoy, eta, det, e_opt)
    bounds = decoy_bounds(
        (q_mu, e_mu), (q_nu, e_nu), det.background_yield, src.mu_signal, src.mu_decoy
    )
    res = KeyRateResult(
        q_gain_signal=q_mu,
        q_gain_decoy=q_nu,
        qber_signal=e_mu,
        qber_decoy=e_nu,
        y1_lower=bounds.y1_lower,
        e1_upper=bounds.e1_upper,
        secure_rate_bps=0.0,
        qber_observed=e_mu,
        clamped=bounds.clamped,
    )
    return replace(res, secure_rate_bps=secure_key_rate(res, src, sifting, f_ec))


def qber_from_optics(phase_error: float, intrinsic_visibility: float) -> float:
    """Optical error fraction of a fringe decoded at its nominal extremes.

    (1 - V cos(phase_error)) / 2, saturated at 1/2: beyond-quadrature phase
    errors are no worse than random guessing for the error accounting.
    """
    if not math.isfinite(phase_error):
        raise ValueError("phase_error must be finite")
    if not 0.0 <= intrinsic_visibility <= 1.0:
        raise ValueError("intrinsic_visibility must be in [0, 1]")
    return min(E0, (1.0 - intrinsic_visibility * math.cos(phase_error)) / 2.0)


@dataclass(frozen=True)
class SessionResult:
    """Binned time series of observed QBER and secure rate."""

    times_s: np.ndarray
    qber: np.ndarray
    rate_bps: np.ndarray

    @property
    def mean_qber(self) -> float:
        return float(self.qber.mean())

    @property
    def std_qber(self) -> float:
        return float(self.qber.std())

    @property
    def mean_rate_bps(self) -> float:
        return float(self.rate_bps.mean())

    @property
    def std_rate_bps(self) -> float:
        return float(self.rate_bps.std())


def _sampled_gain_qber(
    rng: np.random.Generator, n_pulses: int, q: float, e: float
) -> tuple[float, float]:
    """Empirical (gain, QBER) from binomial detection and error counts."""
    detections = int(rng.binomial(n_pulses, q))
    if detections == 0:
        return 0.0, E0
    errors = int(rng.binomial(detections, e))
    return detections / n_pulses, errors / detections


def simulate_session(
    src: SourceConfig,
    ch: ChannelConfig,
    det: DetectorConfig,
    drift: DriftModel,
    duration_s: float,
    bin_s: float,
    seed: int | None,
    *,
    intrinsic_visibility: float = 1.0,
    sifting: float = DEFAULT_SIFTING,
    f_ec: float = DEFAULT_F_EC,
    shot_noise: bool = True,
) -> SessionResult:
    """Simulate a keyed session binned into intervals of ``bin_s`` seconds.

    Per bin the interferometric phase error takes a Gaussian random-walk
    step (and is reset into the compensation residual every
    compensation_interval bins), the optical error follows from the fringe,
    and detection/error counts are drawn binomially from the bin's pulse
    budget unless ``shot_noise`` is False. Deterministic for a given seed.

    With zero drift and ``shot_noise=False`` every bin reproduces the
    analytic operating point exactly.
    """
    if bin_s <= 0.0:
        raise ValueError("bin_s must be positive")
    if duration_s < bin_s:
        raise ValueError("duration_s must cover at least one bin")
    n_bins = int(duration_s // bin_s)
    rng = np.random.default_rng(seed)
    eta = channel_transmittance(ch, det)
    y0 = det.background_yield
    pulses_per_bin = src.rep_rate_hz * bin_s
    n_sig = int(round(pulses_per_bin * src.signal_fraction))
    n_dec = int(round(pulses_per_bin * src.decoy_fraction))
    n_vac = int(round(pulses_per_bin * src.vacuum_fraction))

    times = np.empty(n_bins)
    qbers = np.empty(n_bins)
    rates = np.empty(n_bins)
    phase = 0.0
    for i in range(n_bins):
        if i > 0 and drift.compensation_interval > 0 and i % drift.compensation_interval == 0:
            phase = drift.compensation_residual * rng.uniform(-1.0, 1.0)
        phase += rng.normal(0.0, drift.phase_sigma)
        e_opt = qber_from_optics(phase, intrinsic_visibility)
        q_mu, e_mu = gain_and_qber(src.mu_signal, eta, det, e_opt)
        q_nu, e_nu = gain_and_qber(src.mu_decoy, eta, det, e_opt)
        if shot_noise:
            q_mu, e_mu = _sampled_gain_qber(rng, n_sig, q_mu, e_mu)
            q_nu, e_nu = _sampled_gain_qber(rng, n_dec, q_nu, e_nu)
            y0_hat = float(rng.binomial(n_vac, y0)) / n_vac if n_vac > 0 else y0
        else:
            y0_hat = y0
        bounds = decoy_bounds((q_mu, e_mu), (q_nu, e_nu), y0_hat, src.mu_signal, src.mu_decoy)
        res = KeyRateResult(
            q_gain_signal=q_mu,
            q_gain_decoy=q_nu,
            qber_signal=e_mu,
            qber_decoy=e_nu,
            y1_lower=bounds.y1_lower,
            e1_upper=bounds.e1_upper,
            secure_rate_bps=0.0,
            qber_observed=e_mu,
            clamped=bounds.clamped,
        )
        times[i] = (i + 1) * bin_s
        qbers[i] = e_mu
        rates[i] = secure_key_rate(res, src, sifting, f_ec)
    return SessionResult(times_s=times, qber=qbers, rate_bps=rates)


def sweep_distance(
    src: SourceConfig,
    det: DetectorConfig,
    loss_db_per_km: float,
    lengths: list[float] | np.ndarray,
    *,
    fixed_loss_db: float = 0.0,
    e_opt: float = 0.0,
    sifting: float = DEFAULT_SIFTING,
    f_ec: float = DEFAULT_F_EC,
) -> list[tuple[float, float]]:
    """Analytic secure rate at each fiber length, non-increasing with length."""
    if len(lengths) == 0:
        raise ValueError("lengths must be non-empty")
    out = []
    for length in lengths:
        ch = ChannelConfig(
            length_km=float(length),
            loss_db_per_km=loss_db_per_km,
            fixed_loss_db=fixed_loss_db,
        )
        res = analytic_operating_point(src, ch, det, e_opt, sifting=sifting, f_ec=f_ec)
        out.append((float(length), res.secure_rate_bps))
    return out
