"""Tandem-interferometer link: path operators, output field, fading scans.

Two unbalanced reflective interferometers, one at each end of a fiber
channel, give two interfering routes for a pulse: long arm at the sender
then short arm at the receiver, or the other way around. Scalar propagation
phases are accumulated separately from the 2x2 polarization operators, so
the phase difference between the routes stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .optical_elements import (
    ArmSpec,
    MirrorKind,
    mirror_operator,
    pm_fiber_operator,
    roundtrip,
)
from .su2_algebra import (
    ALGEBRA_TOL,
    CHAIN_TOL,
    JonesVector,
    Matrix2c,
    dagger,
    haar_random_su2,
    is_unitary,
    pauli,
    power,
    proportional_to,
)


class PathKind(Enum):
    """The two interfering routes through the tandem interferometers."""

    P1 = "long_a_then_short_b"
    P2 = "short_a_then_long_b"


def _identity() -> Matrix2c:
    return np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class LinkSpec:
    """Sender and receiver arms plus the connecting channel.

    channel_unitary is the polarization transformation of the transmission
    fiber and channel_phase its scalar phase. coupler_amplitude is the field
    amplitude a route collects from its two passes through the 50/50
    coupler, 1/4 for an ideal lossless coupler.
    """

    alice_long: ArmSpec
    alice_short: ArmSpec
    bob_long: ArmSpec
    bob_short: ArmSpec
    channel_unitary: Matrix2c = field(default_factory=_identity)
    channel_phase: float = 0.0
    coupler_amplitude: float = 0.25

    def __post_init__(self) -> None:
        if not is_unitary(self.channel_unitary, ALGEBRA_TOL):
            raise ValueError("channel_unitary must be unitary")
        if not 0.0 < self.coupler_amplitude <= 1.0:
            raise ValueError("coupler_amplitude must be in (0, 1]")
        if not math.isfinite(self.channel_phase):
            raise ValueError("channel_phase must be finite")


def make_link(
    mirror: MirrorKind,
    fiber_deltas: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
    channel_unitary: Matrix2c | None = None,
    *,
    channel_phase: float = 0.0,
    arm_phases: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
    phase_shifts: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
    coupler_amplitude: float = 0.25,
) -> LinkSpec:
    """Link with the same mirror kind in all four arms.

    Tuple arguments are ordered (alice_long, alice_short, bob_long,
    bob_short).
    """
    arms = [
        ArmSpec(fiber_delta=d, mirror=mirror, phase_shift=ps, arm_phase=ap)
        for d, ps, ap in zip(fiber_deltas, phase_shifts, arm_phases)
    ]
    return LinkSpec(
        alice_long=arms[0],
        alice_short=arms[1],
        bob_long=arms[2],
        bob_short=arms[3],
        channel_unitary=_identity() if channel_unitary is None else channel_unitary,
        channel_phase=channel_phase,
        coupler_amplitude=coupler_amplitude,
    )


def arm_operator(arm: ArmSpec) -> tuple[Matrix2c, float]:
    """Round-trip operator of one arm and the scalar phase it contributes."""
    op = roundtrip(pm_fiber_operator(arm.fiber_delta), mirror_operator(arm.mirror))
    return op, arm.arm_phase + arm.phase_shift


def path_operator(link: LinkSpec, kind: PathKind) -> tuple[Matrix2c, float]:
    """Polarization operator and accumulated scalar phase of one route."""
    c = np.asarray(link.channel_unitary, dtype=complex)
    if kind is PathKind.P1:
        first_op, first_phase = arm_operator(link.alice_long)
        second_op, second_phase = arm_operator(link.bob_short)
    elif kind is PathKind.P2:
        first_op, first_phase = arm_operator(link.alice_short)
        second_op, second_phase = arm_operator(link.bob_long)
    else:
        raise ValueError(f"unknown path kind: {kind!r}")
    return second_op @ c @ first_op, first_phase + link.channel_phase + second_phase


def delta_phases(link: LinkSpec) -> tuple[float, float, float]:
    """Long-arm, short-arm and shifter phase differences between the routes.

    Sign convention: delta_alpha is sender minus receiver for the long
    arms, delta_beta is receiver minus sender for the short arms, and
    delta_phi pairs the shifters the same way, so that the three terms sum
    exactly to the scalar phase of route P1 minus route P2. (The channel
    phase enters both routes and drops out of the difference.)
    """
    d_alpha = link.alice_long.arm_phase - link.bob_long.arm_phase
    d_beta = link.bob_short.arm_phase - link.alice_short.arm_phase
    d_phi = (
        link.alice_long.phase_shift
        + link.bob_short.phase_shift
        - link.alice_short.phase_shift
        - link.bob_long.phase_shift
    )
    return d_alpha, d_beta, d_phi


def output_field(link: LinkSpec, e_in: JonesVector) -> JonesVector:
    """Field at the recombining port: both routes summed with their phases."""
    op1, th1 = path_operator(link, PathKind.P1)
    op2, th2 = path_operator(link, PathKind.P2)
    combined = np.exp(1j * th1) * op1 + np.exp(1j * th2) * op2
    return link.coupler_amplitude * (combined @ np.asarray(e_in, dtype=complex))


def interference_power(link: LinkSpec, e_in: JonesVector) -> float:
    """Optical power at the recombining port."""
    return power(output_field(link, e_in))


def predicted_power(
    p_in: float, delta_alpha: float, delta_beta: float, delta_phi: float
) -> float:
    """Closed-form fringe power for matched-mirror links, ideal 1/4 coupler.

    Valid whenever the two routes share the same polarization operator
    (quarter-wave or Faraday reflectors in all arms): the output power is
    (p_in / 8) * (1 + cos(sum of the three deltas)) independent of channel
    and fiber birefringence.
    """
    if p_in < 0:
        raise ValueError("p_in must be non-negative")
    return p_in / 8.0 * (1.0 + math.cos(delta_alpha + delta_beta + delta_phi))


def check_anti_disturbance(L: Matrix2c, S: Matrix2c, tol: float = CHAIN_TOL) -> bool:
    """True when the long/short arm pair cannot cause polarization fading.

    The condition is that dagger(L) @ S is proportional to the identity, or
    equivalently that L and S agree up to a global phase.
    """
    if not is_unitary(L, tol) or not is_unitary(S, tol):
        raise ValueError("L and S must be unitary")
    if proportional_to(dagger(L) @ np.asarray(S, dtype=complex), pauli(0), tol):
        return True
    return proportional_to(L, S, tol)


def poincare_grid() -> np.ndarray:
    """26 probe polarizations spread over the polarization sphere.

    The sphere points are the octahedron vertices, edge midpoints and face
    centers; each is mapped to the Jones state (cos(t/2), sin(t/2) e^{i p})
    with (t, p) its polar coordinates.
    """
    pts = []
    for sx in (1.0, -1.0):
        pts.append((sx, 0.0, 0.0))
        pts.append((0.0, sx, 0.0))
        pts.append((0.0, 0.0, sx))
    r = 1.0 / math.sqrt(2.0)
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            pts.append((sx * r, sy * r, 0.0))
            pts.append((sx * r, 0.0, sy * r))
            pts.append((0.0, sx * r, sy * r))
    f = 1.0 / math.sqrt(3.0)
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            for sz in (1.0, -1.0):
                pts.append((sx * f, sy * f, sz * f))
    states = np.empty((len(pts), 2), dtype=complex)
    for i, (x, y, z) in enumerate(pts):
        theta = math.acos(max(-1.0, min(1.0, z)))
        phi = math.atan2(y, x)
        states[i, 0] = math.cos(theta / 2.0)
        states[i, 1] = math.sin(theta / 2.0) * np.exp(1j * phi)
    return states


def visibility(link_template: LinkSpec, sweep_points: int = 64) -> float:
    """Worst-case fringe visibility when sweeping the sender's long-arm shifter.

    The shifter runs over ``sweep_points`` values in [0, 2 pi); the fringe
    contrast (P_max - P_min) / (P_max + P_min) is evaluated for every probe
    state of :func:`poincare_grid` and the smallest contrast is returned.
    """
    if sweep_points < 8:
        raise ValueError("sweep_points must be at least 8")
    op1, th1 = path_operator(link_template, PathKind.P1)
    op2, th2 = path_operator(link_template, PathKind.P2)
    # th1 with the template's shifter value removed; the sweep replaces it.
    th1_base = th1 - link_template.alice_long.phase_shift
    states = poincare_grid()
    a = states @ op1.T
    b = states @ op2.T
    na = np.sum(np.abs(a) ** 2, axis=1)
    nb = np.sum(np.abs(b) ** 2, axis=1)
    cross = np.sum(np.conj(a) * b, axis=1)
    phis = np.arange(sweep_points) * (2.0 * np.pi / sweep_points)
    rel = np.exp(1j * (th2 - th1_base - phis))
    p = na[:, None] + nb[:, None] + 2.0 * np.real(cross[:, None] * rel[None, :])
    p *= link_template.coupler_amplitude**2
    pmax = p.max(axis=1)
    pmin = p.min(axis=1)
    vis = (pmax - pmin) / (pmax + pmin)
    return float(vis.min())


@dataclass(frozen=True)
class FadingScanResult:
    """Per-sample visibilities of a random-channel scan plus summaries."""

    scheme: MirrorKind
    visibilities: np.ndarray

    @property
    def min_visibility(self) -> float:
        return float(self.visibilities.min())

    @property
    def mean_visibility(self) -> float:
        return float(self.visibilities.mean())

    @property
    def p5_visibility(self) -> float:
        return float(np.percentile(self.visibilities, 5.0))


def fading_scan(
    scheme: MirrorKind,
    samples: int,
    seed: int | None,
    *,
    sweep_points: int = 64,
) -> FadingScanResult:
    """Visibility statistics over random channels and arm birefringences.

    Each sample draws a Haar-random channel unitary and four uniform fiber
    deltas; arm phases stay at zero so the sweep grid contains the exact
    fringe extremes. Deterministic for a given seed.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    vis = np.empty(samples)
    for i in range(samples):
        c = haar_random_su2(rng)
        deltas = rng.uniform(0.0, 2.0 * np.pi, size=4)
        link = make_link(scheme, tuple(deltas), c)
        vis[i] = visibility(link, sweep_points)
    return FadingScanResult(scheme, vis)
