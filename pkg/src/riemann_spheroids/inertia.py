"""Locked inertia tensor, momentum map and the twice-augmented potential.

Tangent vectors at a configuration F are plain 3x3 matrices; the gradient of a
function is the matrix G with df(F).dF = tr(G^T dF).  Bilinear forms are
evaluated on caller-supplied tangent matrices rather than flattened.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import PhysicalParams, VelocityPair, generator, hat, invariants
from .potential import PotentialDerivs, derivs_for, potential_value

_DEFAULT = PhysicalParams()


def i_tensor(A) -> np.ndarray:
    """tr(A) I - A."""
    A = np.asarray(A, dtype=float)
    return np.trace(A) * np.eye(3) - A


def locked_inertia(F, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """6x6 matrix of the locked inertia over the ordered basis (xi_L | xi_R)."""
    F = np.asarray(F, dtype=float)
    d = np.linalg.det(F)
    off = -2.0 * d * np.linalg.inv(F).T
    block = np.block([[i_tensor(F @ F.T), off],
                      [off.T, i_tensor(F.T @ F)]])
    return params.T * block


def locked_inertia_form(F, xi: VelocityPair, eta: VelocityPair,
                        params: PhysicalParams = _DEFAULT) -> float:
    """Trace form of the locked inertia evaluated on (xi, eta)."""
    F = np.asarray(F, dtype=float)
    xl, xr = hat(xi.xi_L), hat(xi.xi_R)
    yl, yr = hat(eta.xi_L), hat(eta.xi_R)
    S = F @ F.T
    C = F.T @ F
    val = np.trace(xl.T @ yl @ S + xr.T @ C @ yr - xl.T @ F @ yr @ F.T - xr.T @ F.T @ yl @ F)
    return params.T * float(val)


@dataclass(frozen=True)
class Momentum:
    """Angular momentum j and circulation c."""

    j: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "j", np.asarray(self.j, dtype=float).reshape(3))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float).reshape(3))

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.j, self.c])


def momentum(F, xi: VelocityPair, params: PhysicalParams = _DEFAULT) -> Momentum:
    F = np.asarray(F, dtype=float)
    d = np.linalg.det(F)
    Finv = np.linalg.inv(F)
    j = i_tensor(F @ F.T) @ xi.xi_L - 2.0 * d * Finv.T @ xi.xi_R
    c = i_tensor(F.T @ F) @ xi.xi_R - 2.0 * d * Finv @ xi.xi_L
    return Momentum(params.T * j, params.T * c)


def d_locked_inertia(F, A, xi: VelocityPair, eta: VelocityPair,
                     params: PhysicalParams = _DEFAULT) -> float:
    """<eta, (D I(F).A)(xi)>: derivative of the locked-inertia form along A."""
    gx, gy = generator(xi, F), generator(eta, F)
    ax, ay = generator(xi, A), generator(eta, A)
    return params.T * float(np.sum(ax * gy) + np.sum(gx * ay))


def d_locked_inertia_covector(F, A, xi: VelocityPair,
                              params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """The 6-vector w -> <w, (D I(F).A)(xi)> in the (xi_L | xi_R) coordinates."""
    basis = np.eye(6)
    return np.array([d_locked_inertia(F, A, xi, VelocityPair.from_vector(b), params)
                     for b in basis])


def d2_locked_inertia(F, A, B, xi: VelocityPair, params: PhysicalParams = _DEFAULT) -> float:
    """[xi] D^2 I(F)(A, B) [xi]; independent of F since the form is quadratic in F."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    L, R = hat(xi.xi_L), hat(xi.xi_R)
    val = np.trace(4 * R @ B.T @ L @ A - 2 * L @ L @ A @ B.T - 2 * R @ R @ B.T @ A)
    return params.T * float(val)


def v2aug(F, xi: VelocityPair, lam: float, params: PhysicalParams = _DEFAULT) -> float:
    """Twice-augmented potential V - (1/2) I(F)(xi, xi) - lam det F."""
    F = np.asarray(F, dtype=float)
    return (potential_value(F, params)
            - 0.5 * locked_inertia_form(F, xi, xi, params)
            - lam * float(np.linalg.det(F)))


def d_potential(F, derivs: PotentialDerivs) -> np.ndarray:
    F = np.asarray(F, dtype=float)
    I1 = invariants(F)[0]
    return 2 * derivs.V1 * F + 2 * derivs.V2 * (I1 * F - F @ F.T @ F)


def d_v2aug(F, xi: VelocityPair, lam: float, params: PhysicalParams = _DEFAULT,
            derivs: PotentialDerivs | None = None) -> np.ndarray:
    """Gradient matrix of the twice-augmented potential."""
    F = np.asarray(F, dtype=float)
    if derivs is None:
        derivs = derivs_for(F, params)
    L, R = hat(xi.xi_L), hat(xi.xi_R)
    M = L @ F - F @ R
    kinetic = params.T * (L @ M - M @ R)
    constraint = lam * np.linalg.det(F) * np.linalg.inv(F).T
    return d_potential(F, derivs) + kinetic - constraint


def d2_potential(F, A, B, derivs: PotentialDerivs) -> float:
    F = np.asarray(F, dtype=float)
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    I1 = invariants(F)[0]
    d = derivs
    C = F.T @ F
    S = F @ F.T
    tFA = np.trace(F.T @ A)
    tFB = np.trace(F @ B.T)
    tCA = np.trace(C @ F.T @ A)          # tr(F^T F F^T A)
    tSB = np.trace(S @ F @ B.T)          # tr(F F^T F B^T)
    mix = d.V12 + I1 * d.V22
    val = (2 * np.trace(B.T @ A) * (d.V1 + I1 * d.V2)
           - 2 * np.trace(B @ C @ A.T + F @ B.T @ F @ A.T + S @ B @ A.T) * d.V2
           + 4 * tFA * tFB * (d.V2 + d.V11 + 2 * I1 * d.V12 + I1 ** 2 * d.V22)
           - 4 * tSB * tFA * mix
           - 4 * tCA * tFB * mix
           + 4 * tCA * tSB * d.V22)
    return float(val)


def d2_det(F, A, B) -> float:
    F = np.asarray(F, dtype=float)
    Finv = np.linalg.inv(F)
    FA = Finv @ np.asarray(A, dtype=float)
    FB = Finv @ np.asarray(B, dtype=float)
    return float(np.linalg.det(F) * (np.trace(FB) * np.trace(FA) - np.trace(FB @ FA)))


def hess_v2aug(F, xi: VelocityPair, lam: float, A, B, params: PhysicalParams = _DEFAULT,
               derivs: PotentialDerivs | None = None) -> float:
    """Second derivative of the twice-augmented potential on (A, B).

    Only meaningful at a critical point; callers check the gradient first.
    """
    if derivs is None:
        derivs = derivs_for(F, params)
    return (d2_potential(F, A, B, derivs)
            - 0.5 * d2_locked_inertia(F, A, B, xi, params)
            - lam * d2_det(F, A, B))
