"""Polarization-fading analysis and decoy-state BB84 performance model for
reflective Michelson interferometer QKD links."""

from .su2_algebra import (
    ALGEBRA_TOL,
    CHAIN_TOL,
    SU2Params,
    apply,
    dagger,
    det,
    haar_random_su2,
    is_unitary,
    jones_vector,
    mul,
    pauli,
    power,
    proportional_to,
    proportionality_factor,
    scale,
    su2,
    transpose,
    u_from_params,
)
from .optical_elements import (
    ArmSpec,
    MirrorKind,
    mirror_operator,
    pm_fiber_operator,
    qwpr_reflection_action,
    roundtrip,
)
from .interferometer import (
    FadingScanResult,
    LinkSpec,
    PathKind,
    arm_operator,
    check_anti_disturbance,
    delta_phases,
    fading_scan,
    interference_power,
    make_link,
    output_field,
    path_operator,
    poincare_grid,
    predicted_power,
    visibility,
)
from .qkd_engine import (
    ChannelConfig,
    DecoyBounds,
    DetectorConfig,
    DriftModel,
    KeyRateResult,
    SessionResult,
    SourceConfig,
    analytic_operating_point,
    binary_entropy,
    channel_transmittance,
    decoy_bounds,
    gain_and_qber,
    qber_from_optics,
    secure_key_rate,
    simulate_session,
    sweep_distance,
)
from .calibration import CalibrationResult, calibrate_operating_point

__version__ = "0.1.0"
