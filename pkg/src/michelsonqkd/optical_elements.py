"""Operators for the physical elements of a reflective interferometer arm.

An arm is a stretch of polarization-maintaining fiber terminated by one of
three mirror assemblies. Reciprocity makes the return pass through any
birefringent element the transpose of its forward matrix, so a whole arm
collapses to ``transpose(forward) @ mirror @ forward``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .su2_algebra import (
    CHAIN_TOL,
    JonesVector,
    Matrix2c,
    apply,
    is_unitary,
    pauli,
    su2,
    transpose,
)


class MirrorKind(Enum):
    """Mirror assembly at the far end of an interferometer arm."""

    QWP_REFLECTOR = "qwp_reflector"
    FARADAY_MIRROR = "faraday_mirror"
    PLAIN_MIRROR = "plain_mirror"


@dataclass(frozen=True)
class ArmSpec:
    """One interferometer arm.

    fiber_delta is the one-way birefringent phase difference between the
    fiber's slow and fast axes, in radians. phase_shift is the setting of a
    phase shifter in the arm (0 when the arm has none) and arm_phase the
    scalar propagation phase of the arm; both are tracked separately from
    the polarization operator.
    """

    fiber_delta: float
    mirror: MirrorKind
    phase_shift: float = 0.0
    arm_phase: float = 0.0

    def __post_init__(self) -> None:
        for v in (self.fiber_delta, self.phase_shift, self.arm_phase):
            if not math.isfinite(v):
                raise ValueError("ArmSpec angles must be finite")


def pm_fiber_operator(delta: float) -> Matrix2c:
    """One-way operator of PM fiber with birefringence strength ``delta``.

    Diagonal with unit-modulus entries exp(+/- i delta/2); delta = 0 is the
    identity.
    """
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    return su2(delta / 2.0, 1.0, 0.0, 0.0)


# The 45 degree alignment between the waveplate axes and the fiber axes is
# baked into the quarter-wave reflector operator, so the whole assembly is a
# single matrix in the fiber frame.
_QWP_REFLECTOR = su2(math.pi / 2.0, 0.0, 1.0, 0.0)  # exchanges X and Y, global phase i
_FARADAY_MIRROR = 1j * pauli(3)  # exchanges X and Y with an extra pi on one component
_PLAIN_MIRROR = pauli(0)  # bare reflector: identity in the transpose convention


def mirror_operator(kind: MirrorKind) -> Matrix2c:
    """Round-trip polarization operator contributed by the mirror assembly."""
    if kind is MirrorKind.QWP_REFLECTOR:
        return _QWP_REFLECTOR.copy()
    if kind is MirrorKind.FARADAY_MIRROR:
        return _FARADAY_MIRROR.copy()
    if kind is MirrorKind.PLAIN_MIRROR:
        return _PLAIN_MIRROR.copy()
    raise ValueError(f"unknown mirror kind: {kind!r}")


def roundtrip(forward: Matrix2c, mirror: Matrix2c, tol: float = CHAIN_TOL) -> Matrix2c:
    """Out-and-back arm operator, ``transpose(forward) @ mirror @ forward``."""
    if not is_unitary(forward, tol):
        raise ValueError("forward operator must be unitary")
    if not is_unitary(mirror, tol):
        raise ValueError("mirror operator must be unitary")
    return transpose(forward) @ np.asarray(mirror, dtype=complex) @ np.asarray(
        forward, dtype=complex
    )


def qwpr_reflection_action(v: JonesVector) -> JonesVector:
    """Reflect a Jones vector off a quarter-wave-plate reflector.

    Maps (1, 0) to (0, i) and (0, 1) to (i, 0): the polarization components
    are exchanged up to a global phase.
    """
    return apply(mirror_operator(MirrorKind.QWP_REFLECTOR), v)
