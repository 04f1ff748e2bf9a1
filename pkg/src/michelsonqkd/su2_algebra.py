"""Complex 2x2 operator algebra for polarization optics.

Everything in this package acts on Jones vectors (length-2 complex numpy
arrays, squared norm = optical power) through 2x2 complex matrices. The
matrices are small enough that every operation is written as an explicit
formula on fixed-shape arrays; no general linear-algebra machinery is used.

Pauli index convention
----------------------
The Pauli matrices are numbered in the birefringence operator-algebra
order, which is NOT the common qubit ordering:

    ===========  =====================  ======================
    index        matrix                 common physics name
    ===========  =====================  ======================
    pauli(0)     [[1, 0], [0, 1]]       identity
    pauli(1)     [[1, 0], [0, -1]]      sigma_z
    pauli(2)     [[0, 1], [1, 0]]       sigma_x
    pauli(3)     [[0, 1j], [-1j, 0]]    -sigma_y
    ===========  =====================  ======================

Keep this table in mind when comparing against qubit-convention texts;
for instance ``pauli(2) @ pauli(1) == 1j * pauli(3)`` holds here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: tolerance for one-shot algebraic identities evaluated in double precision
ALGEBRA_TOL = 1e-12
#: looser tolerance for identities reached through long (>10 factor) chains
CHAIN_TOL = 1e-10

# Type aliases: a Matrix2c is a (2, 2) complex ndarray, a JonesVector a
# (2,) complex ndarray. Plain arrays keep the algebra numpy-idiomatic.
Matrix2c = np.ndarray
JonesVector = np.ndarray

_PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, 1j], [-1j, 0]], dtype=complex),
)


def pauli(k: int) -> Matrix2c:
    """Pauli matrix number ``k`` in the module's index convention (see above)."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be one of 0..3, got {k!r}")
    return _PAULI[k].copy()


@dataclass(frozen=True)
class SU2Params:
    """Rotation angle gamma plus unit axis weights (s1, s2, s3)."""

    gamma: float
    s: tuple[float, float, float]

    def __post_init__(self) -> None:
        values = (self.gamma, *self.s)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("SU2Params entries must be finite")
        norm = math.fsum(v * v for v in self.s)
        if abs(norm - 1.0) > ALGEBRA_TOL:
            raise ValueError(f"axis weights must satisfy s1^2+s2^2+s3^2 = 1, got {norm!r}")


def u_from_params(p: SU2Params) -> Matrix2c:
    """cos(gamma) * I + i sin(gamma) * (s1 pauli1 + s2 pauli2 + s3 pauli3).

    The result is unitary for any valid parameter set.
    """
    c = math.cos(p.gamma)
    s = math.sin(p.gamma)
    s1, s2, s3 = p.s
    return np.array(
        [
            [c + 1j * s * s1, 1j * s * s2 - s * s3],
            [1j * s * s2 + s * s3, c - 1j * s * s1],
        ],
        dtype=complex,
    )


def su2(gamma: float, s1: float, s2: float, s3: float) -> Matrix2c:
    """Shorthand for ``u_from_params(SU2Params(gamma, (s1, s2, s3)))``."""
    return u_from_params(SU2Params(gamma, (s1, s2, s3)))


def mul(a: Matrix2c, b: Matrix2c) -> Matrix2c:
    return np.asarray(a, dtype=complex) @ np.asarray(b, dtype=complex)


def transpose(a: Matrix2c) -> Matrix2c:
    return np.asarray(a, dtype=complex).T.copy()


def dagger(a: Matrix2c) -> Matrix2c:
    return np.asarray(a, dtype=complex).conj().T.copy()


def scale(a: Matrix2c, c: complex) -> Matrix2c:
    return c * np.asarray(a, dtype=complex)


def apply(a: Matrix2c, v: JonesVector) -> JonesVector:
    return np.asarray(a, dtype=complex) @ np.asarray(v, dtype=complex)


def det(a: Matrix2c) -> complex:
    a = np.asarray(a, dtype=complex)
    return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def jones_vector(ex: complex, ey: complex) -> JonesVector:
    """Jones vector with field amplitudes ex, ey along the fiber axes."""
    return np.array([ex, ey], dtype=complex)


def power(v: JonesVector) -> float:
    """Optical power carried by a Jones vector, |ex|^2 + |ey|^2."""
    v = np.asarray(v, dtype=complex)
    return float(np.real(np.vdot(v, v)))


def is_unitary(a: Matrix2c, tol: float = ALGEBRA_TOL) -> bool:
    """True when the max entry of (a^dagger a - I) is at most ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a, dtype=complex)
    gram = a.conj().T @ a
    return bool(np.max(np.abs(gram - np.eye(2))) <= tol)


def haar_random_su2(
    rng: np.random.Generator | int | None, size: int | None = None
) -> Matrix2c:
    """Haar-distributed SU(2) sample, deterministic for a given seed.

    ``rng`` may be a numpy Generator or a seed. With ``size=None`` one
    (2, 2) matrix is returned, otherwise a (size, 2, 2) array.

    Writes the element as [[a, b], [-conj(b), conj(a)]] with the phases of
    a and b uniform and |a|^2 uniform on [0, 1], which is the Haar weight.
    """
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    n = 1 if size is None else int(size)
    phi = gen.uniform(0.0, 2.0 * np.pi, size=n)
    psi = gen.uniform(0.0, 2.0 * np.pi, size=n)
    t = np.arcsin(np.sqrt(gen.uniform(0.0, 1.0, size=n)))
    a = np.cos(t) * np.exp(1j * phi)
    b = np.sin(t) * np.exp(1j * psi)
    out = np.empty((n, 2, 2), dtype=complex)
    out[:, 0, 0] = a
    out[:, 0, 1] = b
    out[:, 1, 0] = -np.conj(b)
    out[:, 1, 1] = np.conj(a)
    return out[0] if size is None else out


def proportionality_factor(a: Matrix2c, b: Matrix2c) -> complex:
    """Ratio a/b read off at b's largest-magnitude entry.

    Only meaningful when a is (close to) a scalar multiple of b; use
    ``proportional_to`` to decide whether that is the case.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    idx = int(np.argmax(np.abs(b)))
    ref = b.flat[idx]
    if ref == 0:
        raise ValueError("b must be nonzero")
    return complex(a.flat[idx] / ref)


def proportional_to(a: Matrix2c, b: Matrix2c, tol: float = CHAIN_TOL) -> bool:
    """True when a = c * b for some unit-modulus complex c, within ``tol``.

    Phase-insensitive matrix comparison: operators that differ by a global
    phase act identically on output powers.
    """
    c = proportionality_factor(a, b)
    if abs(abs(c) - 1.0) > tol:
        return False
    residual = np.max(np.abs(np.asarray(a, dtype=complex) - c * np.asarray(b, dtype=complex)))
    return bool(residual <= tol)
