"""Fit the free receiver parameters against a measured operating point.

Source and fiber numbers are known; detector efficiency and dark counts
keep their datasheet-style defaults. What is left free is the lumped
receiver insertion loss, which also absorbs the factor-4 interferometric
power budget of the tandem-Michelson readout (about 6 dB), and the
residual optical misalignment error. These two knobs are solved so the
analytic model reproduces a target (QBER, secure rate) pair at a reference
channel. The solve is a deterministic bounded root find, so calibrated
numbers are reproducible outputs rather than configuration constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy.optimize import brentq

from .qkd_engine import (
    DEFAULT_F_EC,
    DEFAULT_SIFTING,
    E0,
    ChannelConfig,
    DetectorConfig,
    KeyRateResult,
    SourceConfig,
    analytic_operating_point,
    channel_transmittance,
)

#: Fig-4-style defaults: observed mean QBER and mean secure rate
DEFAULT_TARGET_QBER = 0.0083
DEFAULT_TARGET_RATE_BPS = 7340.0


@dataclass(frozen=True)
class CalibrationResult:
    """Calibrated detector plus the fitted optical error, with diagnostics."""

    detector: DetectorConfig
    e_opt: float
    intrinsic_visibility: float
    phase_error_rad: float
    target_qber: float
    target_rate_bps: float
    achieved: KeyRateResult


def _e_opt_for_qber(target_qber: float, mu: float, eta: float, y0: float) -> float:
    """Misalignment error that makes the signal QBER hit the target.

    Solves E (y0 + s) = E0 y0 + e_opt s for e_opt with s = 1 - exp(-eta mu);
    clamped into [0, 1/2] (0 when background counts alone already exceed
    the target).
    """
    s = -math.expm1(-eta * mu)
    if s <= 0.0:
        return 0.0
    e = (target_qber * (y0 + s) - E0 * y0) / s
    return min(max(e, 0.0), E0)


def calibrate_operating_point(
    src: SourceConfig,
    ch: ChannelConfig,
    det_template: DetectorConfig,
    target_qber: float = DEFAULT_TARGET_QBER,
    target_rate_bps: float = DEFAULT_TARGET_RATE_BPS,
    *,
    receiver_loss_bounds_db: tuple[float, float] = (0.0, 30.0),
    sifting: float = DEFAULT_SIFTING,
    f_ec: float = DEFAULT_F_EC,
) -> CalibrationResult:
    """Solve receiver loss and optical error so the model hits the targets.

    For each candidate receiver loss the optical error follows in closed
    form from the QBER target; the loss itself is then the root of
    rate(loss) - target_rate, found with a bracketed scalar solve over
    ``receiver_loss_bounds_db``. Raises ValueError when the bounds do not
    bracket the target rate.
    """
    if not 0.0 < target_qber < E0:
        raise ValueError("target_qber must be in (0, 1/2)")
    if target_rate_bps <= 0.0:
        raise ValueError("target_rate_bps must be positive")

    def rate_minus_target(loss_db: float) -> float:
        det = replace(det_template, receiver_insertion_loss_db=loss_db)
        eta = channel_transmittance(ch, det)
        e_opt = _e_opt_for_qber(target_qber, src.mu_signal, eta, det.background_yield)
        point = analytic_operating_point(src, ch, det, e_opt, sifting=sifting, f_ec=f_ec)
        return point.secure_rate_bps - target_rate_bps

    lo, hi = receiver_loss_bounds_db
    if not (rate_minus_target(lo) > 0.0 > rate_minus_target(hi)):
        raise ValueError(
            "receiver_loss_bounds_db does not bracket the target rate; "
            "widen the bounds or revisit the detector defaults"
        )
    loss_db = float(brentq(rate_minus_target, lo, hi, xtol=1e-9))
    detector = replace(det_template, receiver_insertion_loss_db=loss_db)
    eta = channel_transmittance(ch, detector)
    e_opt = _e_opt_for_qber(target_qber, src.mu_signal, eta, detector.background_yield)
    achieved = analytic_operating_point(src, ch, detector, e_opt, sifting=sifting, f_ec=f_ec)
    return CalibrationResult(
        detector=detector,
        e_opt=e_opt,
        intrinsic_visibility=1.0 - 2.0 * e_opt,
        phase_error_rad=math.acos(1.0 - 2.0 * e_opt),
        target_qber=target_qber,
        target_rate_bps=target_rate_bps,
        achieved=achieved,
    )
