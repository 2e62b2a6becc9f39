"""Configuration-space primitives for the fluid ellipsoid.

A configuration is a 3x3 matrix ``F`` with positive determinant (unit
determinant on the constrained manifold).  The symmetry algebra is R^3 + R^3,
an element being a :class:`VelocityPair` (angular velocity, vorticity).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotSkew

E_MAX = 0.999


@dataclass(frozen=True)
class PhysicalParams:
    """Density and gravitational constant, with the two derived constants."""

    rho: float = 1.0
    grav: float = 1.0

    def __post_init__(self):
        if not (self.rho > 0 and self.grav > 0):
            raise DomainError("rho and grav must be positive")

    @property
    def T(self) -> float:
        """Kinetic metric constant 4*pi*rho/15."""
        return 4.0 * math.pi * self.rho / 15.0

    @property
    def R(self) -> float:
        """Potential constant 8*pi^2*G*rho^2/15."""
        return 8.0 * math.pi ** 2 * self.grav * self.rho ** 2 / 15.0

    @property
    def pi_rho_G(self) -> float:
        return math.pi * self.rho * self.grav


class Kind(enum.Enum):
    SPHERE = "sphere"
    OBLATE = "oblate"
    PROLATE = "prolate"


def check_ecc(e: float, allow_zero: bool = False) -> float:
    e = float(e)
    lo_ok = e >= 0 if allow_zero else e > 0
    if not (lo_ok and e <= E_MAX) or math.isnan(e):
        raise DomainError(f"eccentricity {e!r} outside the supported range (0, {E_MAX}]")
    return e


@dataclass(frozen=True)
class Spheroid:
    """Unimodular diagonal configuration diag(a, a, c) labelled by eccentricity."""

    kind: Kind
    ecc: float = 0.0

    def __post_init__(self):
        if self.kind is Kind.SPHERE:
            if self.ecc != 0:
                raise DomainError("a sphere has zero eccentricity")
        else:
            check_ecc(self.ecc)

    @classmethod
    def sphere(cls) -> "Spheroid":
        return cls(Kind.SPHERE, 0.0)

    @classmethod
    def oblate(cls, e: float) -> "Spheroid":
        return cls(Kind.OBLATE, e)

    @classmethod
    def prolate(cls, e: float) -> "Spheroid":
        return cls(Kind.PROLATE, e)

    @property
    def a(self) -> float:
        w = 1.0 - self.ecc ** 2
        if self.kind is Kind.OBLATE:
            return w ** (-1.0 / 6.0)
        if self.kind is Kind.PROLATE:
            return w ** (1.0 / 6.0)
        return 1.0

    @property
    def c(self) -> float:
        w = 1.0 - self.ecc ** 2
        if self.kind is Kind.OBLATE:
            return w ** (1.0 / 3.0)
        if self.kind is Kind.PROLATE:
            return w ** (-1.0 / 3.0)
        return 1.0

    @property
    def matrix(self) -> np.ndarray:
        return np.diag([self.a, self.a, self.c])


def spheroid_from_axis(a: float) -> Spheroid:
    """The unimodular spheroid diag(a, a, 1/a^2)."""
    if a <= 0:
        raise DomainError("semi-axis must be positive")
    c = 1.0 / (a * a)
    if a == 1.0:
        return Spheroid.sphere()
    if a > c:
        return Spheroid.oblate(math.sqrt(1.0 - (c / a) ** 2))
    return Spheroid.prolate(math.sqrt(1.0 - (a / c) ** 2))


@dataclass(frozen=True)
class VelocityPair:
    """Angular velocity ``xi_L`` and vorticity ``xi_R``."""

    xi_L: np.ndarray
    xi_R: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "xi_L", np.asarray(self.xi_L, dtype=float).reshape(3))
        object.__setattr__(self, "xi_R", np.asarray(self.xi_R, dtype=float).reshape(3))

    @classmethod
    def zero(cls) -> "VelocityPair":
        return cls(np.zeros(3), np.zeros(3))

    @classmethod
    def from_vector(cls, v) -> "VelocityPair":
        v = np.asarray(v, dtype=float)
        return cls(v[:3], v[3:])

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.xi_L, self.xi_R])

    def __add__(self, other):
        return VelocityPair(self.xi_L + other.xi_L, self.xi_R + other.xi_R)

    def __mul__(self, k):
        return VelocityPair(k * self.xi_L, k * self.xi_R)

    __rmul__ = __mul__


def hat(v) -> np.ndarray:
    v1, v2, v3 = np.asarray(v, dtype=float).reshape(3)
    return np.array([[0.0, -v3, v2],
                     [v3, 0.0, -v1],
                     [-v2, v1, 0.0]])


def vee(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m + m.T)) > 1e-12 * scale:
        raise NotSkew("matrix is not skew-symmetric")
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def invariants(F) -> tuple[float, float, float]:
    """Principal invariants (I1, I2, I3) of S = F F^T."""
    F = np.asarray(F, dtype=float)
    S = F @ F.T
    tr = np.trace(S)
    return float(tr), float(0.5 * (tr * tr - np.trace(S @ S))), float(np.linalg.det(S))


def is_unimodular(F, tol: float = 1e-12) -> bool:
    return abs(np.linalg.det(F) - 1.0) <= tol


def metric_pair(A, B, params: PhysicalParams = PhysicalParams()) -> float:
    return params.T * float(np.sum(np.asarray(A) * np.asarray(B)))


def generator(xi: VelocityPair, F) -> np.ndarray:
    """Infinitesimal generator hat(xi_L) F - F hat(xi_R) at F."""
    F = np.asarray(F, dtype=float)
    return hat(xi.xi_L) @ F - F @ hat(xi.xi_R)


def rotation(axis, angle: float) -> np.ndarray:
    """Rotation matrix from axis-angle (Rodrigues)."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    K = hat(axis)
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * K @ K
