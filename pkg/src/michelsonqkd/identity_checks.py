"""Self-check suite for the operator algebra and optical-element identities.

Each check evaluates a scalar figure of merit and compares it against a
threshold; most are max residuals of closed-form identities (relation
``le``), one is a separation that must stay large (relation ``gt``). The
command-line front end prints one line per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optical_elements import MirrorKind, mirror_operator, pm_fiber_operator, roundtrip
from .su2_algebra import (
    SU2Params,
    dagger,
    haar_random_su2,
    pauli,
    proportionality_factor,
    su2,
    transpose,
    u_from_params,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    relation: str  # "le": pass when value <= threshold; "gt": pass when value > threshold

    @property
    def passed(self) -> bool:
        if self.relation == "le":
            return self.value <= self.threshold
        return self.value > self.threshold


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a)))


def run_algebra_checks(samples: int = 1000, seed: int = 0, tol: float = 1e-10) -> list[CheckResult]:
    """Evaluate the identity suite; deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    eye = pauli(0)
    out: list[CheckResult] = []

    out.append(
        CheckResult(
            "pauli_involution",
            max(_max_abs(pauli(k) @ pauli(k) - eye) for k in range(4)),
            tol,
            "le",
        )
    )
    out.append(
        CheckResult(
            "pauli_product_rule",
            max(
                _max_abs(pauli(2) @ pauli(1) - 1j * pauli(3)),
                _max_abs(pauli(2) @ pauli(1) + pauli(1) @ pauli(2)),
            ),
            tol,
            "le",
        )
    )

    worst = 0.0
    for _ in range(samples):
        axis = rng.normal(size=3)
        axis /= math.sqrt(float(axis @ axis))
        u = u_from_params(SU2Params(rng.uniform(0.0, 2.0 * np.pi), tuple(axis)))
        worst = max(worst, _max_abs(dagger(u) @ u - eye))
    out.append(CheckResult("su2_param_unitarity", worst, tol, "le"))

    quarter = su2(math.pi / 4.0, 0.0, 1.0, 0.0)
    half = su2(math.pi / 2.0, 0.0, 1.0, 0.0)
    out.append(
        CheckResult(
            "qwpr_decomposition",
            max(
                _max_abs(transpose(quarter) @ quarter - half),
                _max_abs(half - 1j * pauli(2)),
            ),
            tol,
            "le",
        )
    )

    deltas = rng.uniform(0.0, 2.0 * np.pi, size=samples)
    qwpr = mirror_operator(MirrorKind.QWP_REFLECTOR)
    target = 1j * pauli(2)
    worst = 0.0
    worst_const = 0.0
    for d in deltas:
        rt = roundtrip(pm_fiber_operator(d), qwpr)
        worst = max(worst, _max_abs(rt - target))
        worst_const = max(worst_const, abs(proportionality_factor(rt, pauli(2)) - 1j))
    out.append(CheckResult("qwpr_roundtrip_closed_form", worst, tol, "le"))
    out.append(CheckResult("qwpr_roundtrip_constant", worst_const, tol, "le"))

    fm = mirror_operator(MirrorKind.FARADAY_MIRROR)
    worst = 0.0
    for d in deltas:
        rt = roundtrip(pm_fiber_operator(d), fm)
        c = proportionality_factor(rt, pauli(3))
        worst = max(worst, _max_abs(rt - c * pauli(3)), abs(abs(c) - 1.0))
    out.append(CheckResult("faraday_roundtrip_invariance", worst, tol, "le"))

    plain = mirror_operator(MirrorKind.PLAIN_MIRROR)
    rt0 = roundtrip(pm_fiber_operator(0.0), plain)
    rt1 = roundtrip(pm_fiber_operator(math.pi / 2.0), plain)
    c = proportionality_factor(rt1, rt0)
    separation = _max_abs(rt1 - c * rt0)
    out.append(CheckResult("plain_mirror_delta_dependence", separation, tol, "gt"))

    worst = 0.0
    worst_inv = 0.0
    for _ in range(samples):
        u = haar_random_su2(rng)
        worst = max(worst, _max_abs(dagger(u) @ u - eye))
        worst_inv = max(
            worst_inv,
            _max_abs(transpose(transpose(u)) - u),
            _max_abs(dagger(dagger(u)) - u),
        )
    out.append(CheckResult("haar_sample_unitarity", worst, tol, "le"))
    out.append(CheckResult("involution_rules", worst_inv, tol, "le"))
    return out
