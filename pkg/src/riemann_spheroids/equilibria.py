"""Symmetric relative equilibria: the spherical state, MacLaurin spheroids and
the two transversal branches, with the residual of the equilibrium equations.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._series import ClosedForm, polymul
from .errors import DomainError
from .inertia import Momentum, momentum
from .kinematics import (Kind, PhysicalParams, Spheroid, VelocityPair, check_ecc, hat,
                         invariants, spheroid_from_axis)
from .potential import J_quad, PotentialDerivs, derivs_for, potential_derivs

_DEFAULT = PhysicalParams()


class Family(enum.Enum):
    SPHERICAL = "spherical"
    MACLAURIN = "maclaurin"
    TRANSVERSAL_PLUS = "transversal+"
    TRANSVERSAL_MINUS = "transversal-"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise DomainError(f"unknown family {name!r}") from None

    @property
    def is_transversal(self) -> bool:
        return self in (Family.TRANSVERSAL_PLUS, Family.TRANSVERSAL_MINUS)

    @property
    def sign(self) -> int:
        return -1 if self is Family.TRANSVERSAL_MINUS else 1


ISOTROPY = {
    Family.SPHERICAL: {"G_F": "Z2 x| SO(3)^D", "G_mu": "Z2 x| (SO(3) x SO(3))",
                       "G_pF": "Z2 x| SO(3)^D"},
    Family.MACLAURIN: {"G_F": "Z2 x| O(2)_e3^D", "G_mu": "(SO(2)_e3 x SO(2)_e3)~",
                      "G_pF": "O(2)_e3~"},
    Family.TRANSVERSAL_PLUS: {"G_F": "Z2 x| O(2)_e3^D", "G_mu": "SO(2)_n x SO(2)_n",
                             "G_pF": "Z2(n)"},
}
ISOTROPY[Family.TRANSVERSAL_MINUS] = ISOTROPY[Family.TRANSVERSAL_PLUS]

# Omega^2 / (pi rho G) for MacLaurin spheroids
_MACLAURIN_OMEGA2 = ClosedForm([([6, 0, -4], ("sqrt1m", "asin")),
                                ([0, -6, 0, 6], ())], 3)


def _transversal_form(sign: int) -> ClosedForm:
    # -/+ (e -/+ 1)^2 (e +/- 1) (3e + (e^2 - 3) atanh e) / e^5
    p = [-1, 1, 1, -1] if sign > 0 else [-1, -1, 1, 1]
    return ClosedForm([(polymul(p, [0, 3]), ()),
                       (polymul(p, [-3, 0, 1]), ("atanh",))], 5)


_TRANSVERSAL_OMEGA2 = {1: _transversal_form(1), -1: _transversal_form(-1)}


@dataclass(frozen=True)
class EquilibriumState:
    family: Family
    sph: Spheroid
    xi: VelocityPair
    lam: float
    mu: Momentum
    rate: float = 0.0          # Omega (MacLaurin) or omega (transversal)
    f: float | None = None     # vorticity ratio of a transversal state
    isotropy: dict = field(default_factory=dict)

    @property
    def F(self) -> np.ndarray:
        return self.sph.matrix

    @property
    def e(self) -> float:
        return self.sph.ecc


def re_residual(F, xi: VelocityPair, lam: float, params: PhysicalParams = _DEFAULT,
                derivs: PotentialDerivs | None = None) -> tuple[np.ndarray, float]:
    """Right-hand side of the matrix equilibrium equation and det(F) - 1."""
    F = np.asarray(F, dtype=float)
    if derivs is None:
        derivs = derivs_for(F, params)
    L, R = xi.xi_L, xi.xi_R
    Fi = np.linalg.inv(F)
    det = float(np.linalg.det(F))
    I1 = invariants(F)[0]
    Ft = F.T
    kinetic = ((L @ L + R @ R) * Ft - Ft @ np.outer(L, L) - np.outer(R, R) @ Ft
               + 2 * det * (np.outer(Fi @ L, Fi.T @ R) - (L @ Fi.T @ R) * Fi))
    res = (2 * derivs.V1 * Ft + 2 * derivs.V2 * (I1 * Ft - Ft @ F @ Ft)
           - lam * det * Fi - params.T * kinetic)
    return res, det - 1.0


def residual_norm(state: EquilibriumState, params: PhysicalParams = _DEFAULT) -> float:
    res, d = re_residual(state.F, state.xi, state.lam, params)
    return max(float(np.max(np.abs(res))), abs(d))


def spherical(params: PhysicalParams = _DEFAULT) -> EquilibriumState:
    sph = Spheroid.sphere()
    d = potential_derivs(sph, params)
    xi = VelocityPair.zero()
    return EquilibriumState(Family.SPHERICAL, sph, xi, 2 * d.V1 + 4 * d.V2,
                            momentum(sph.matrix, xi, params),
                            isotropy=dict(ISOTROPY[Family.SPHERICAL]))


def maclaurin_omega2(e: float) -> float:
    """Omega^2 / (pi rho G) from the elementary closed form."""
    return _MACLAURIN_OMEGA2(check_ecc(e))


def maclaurin_omega2_quad(e: float) -> float:
    """Omega^2 / (pi rho G) as 2 e^2 (J(3,2) + (1-e^2)^(-1/3) J(3,1)) by quadrature."""
    sph = Spheroid.oblate(check_ecc(e))
    return 2 * e * e * (J_quad(sph, 3, 2) + (1 - e * e) ** (-1 / 3) * J_quad(sph, 3, 1))


def maclaurin(e: float, params: PhysicalParams = _DEFAULT) -> EquilibriumState:
    sph = Spheroid.oblate(check_ecc(e))
    d = potential_derivs(sph, params)
    w = 1 - e * e
    omega = math.sqrt(maclaurin_omega2(e) * params.pi_rho_G)
    lam = 2 * w ** (2 / 3) * d.V1 + 4 * w ** (1 / 3) * d.V2
    # symmetric representative: xi_L - xi_R = Omega e3 with xi orthogonal to the isotropy
    e3 = np.array([0.0, 0.0, 1.0])
    xi = VelocityPair(0.5 * omega * e3, -0.5 * omega * e3)
    return EquilibriumState(Family.MACLAURIN, sph, xi, lam, momentum(sph.matrix, xi, params),
                            rate=omega, isotropy=dict(ISOTROPY[Family.MACLAURIN]))


def vorticity_ratio(e: float, sign: int) -> float:
    """f_+/- = (1 +/- e) / sqrt(1 - e^2)."""
    return (1 + sign * e) / math.sqrt(1 - e * e)


def transversal_omega2(e: float, sign: int) -> float:
    """omega_+/-^2 / (pi rho G) from the elementary closed form."""
    return _TRANSVERSAL_OMEGA2[1 if sign > 0 else -1](check_ecc(e))


def transversal_omega2_quad(e: float, sign: int, params: PhysicalParams = _DEFAULT) -> float:
    """omega^2 / (pi rho G) as (1 -/+ e)(V1 + (1-e^2)^(1/3) V2) / T with quadrature V's."""
    sph = Spheroid.prolate(check_ecc(e))
    v1 = 0.5 * params.R * J_quad(sph, 3, 2)
    v2 = 0.5 * params.R * J_quad(sph, 3, 1)
    w2 = (1 - sign * e) / params.T * (v1 + (1 - e * e) ** (1 / 3) * v2)
    return w2 / params.pi_rho_G


def transversal_lambda(e: float, params: PhysicalParams = _DEFAULT,
                       v2_factor_sign: int = 1) -> float:
    """Lagrange multiplier 2((1-e^2)^(1/3) V1 + s (1-e^2)^(-1/3) (2-e^2) V2).

    ``v2_factor_sign=1`` gives the value that solves the equilibrium equations;
    ``-1`` gives the alternative with the (e^2 - 2) factor, kept for comparison.
    """
    d = potential_derivs(Spheroid.prolate(check_ecc(e)), params)
    w = 1 - e * e
    return 2 * (w ** (1 / 3) * d.V1 + v2_factor_sign * w ** (-1 / 3) * (2 - e * e) * d.V2)


def transversal(e: float, branch: int | str = 1,
                params: PhysicalParams = _DEFAULT) -> EquilibriumState:
    if isinstance(branch, str):
        branch = {"+": 1, "-": -1}[branch]
    sign = 1 if branch > 0 else -1
    sph = Spheroid.prolate(check_ecc(e))
    f = vorticity_ratio(e, sign)
    omega = math.sqrt(transversal_omega2(e, sign) * params.pi_rho_G)
    n = np.array([0.0, 1.0, 0.0])
    xi = VelocityPair(omega * n, omega * f * n)
    fam = Family.TRANSVERSAL_PLUS if sign > 0 else Family.TRANSVERSAL_MINUS
    return EquilibriumState(fam, sph, xi, transversal_lambda(e, params),
                            momentum(sph.matrix, xi, params), rate=omega, f=f,
                            isotropy=dict(ISOTROPY[fam]))


def build(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> EquilibriumState:
    family = Family.parse(family)
    if family is Family.SPHERICAL:
        return spherical(params)
    if family is Family.MACLAURIN:
        return maclaurin(e, params)
    return transversal(e, family.sign, params)


@dataclass(frozen=True)
class NonexistenceEvidence:
    a: float
    static_gap: float           # |(a^6 - 1)(V1 + a^2 V2)|, in R units
    forced_g: tuple             # g values forced by comparing the first two equations
    branch_g: tuple             # g values solving the two coupling equations
    mixed_gap: float            # min distance between the two sets

    @property
    def no_solution(self) -> bool:
        return self.static_gap > 0 and self.mixed_gap > 0


def no_other_symmetric_re_evidence(a: float,
                                   params: PhysicalParams = _DEFAULT) -> NonexistenceEvidence:
    """Sampled evidence that no other spheroidal equilibria exist at semi-axis ``a``.

    (a) with zero velocity the equations force (a^6 - 1)(V1 + a^2 V2) = 0;
    (b) with both velocity components nonzero, the g forced by the diagonal
    equations never coincides with the g solving the off-diagonal ones.
    """
    if not a > 0 or a == 1:
        raise DomainError("semi-axis must be positive and different from 1")
    d = potential_derivs(spheroid_from_axis(a), params)
    static = abs((a ** 6 - 1) * (d.V1 + a * a * d.V2)) / params.R
    a3, a6 = a ** 3, a ** 6
    r1 = cmath.sqrt(1 - a6)
    forced = ((1 + r1) / a3, (1 - r1) / a3)
    r2 = cmath.sqrt(1 - 10 * a6 + 9 * a6 * a6)
    branch = ((1 + 3 * a6 + r2) / (4 * a3), (1 + 3 * a6 - r2) / (4 * a3))
    gap = min(abs(g - h) for g in forced for h in branch)
    return NonexistenceEvidence(a, static, forced, branch, gap)


def dedekind_image(state: EquilibriumState) -> tuple[np.ndarray, VelocityPair]:
    """Transpose the configuration and swap angular velocity and vorticity."""
    return state.F.T, VelocityPair(state.xi.xi_R, state.xi.xi_L)


__all__ = [
    "Family", "EquilibriumState", "re_residual", "residual_norm", "spherical", "maclaurin",
    "transversal", "build", "maclaurin_omega2", "maclaurin_omega2_quad",
    "transversal_omega2", "transversal_omega2_quad", "transversal_lambda",
    "vorticity_ratio", "no_other_symmetric_re_evidence", "NonexistenceEvidence",
    "dedekind_image", "ISOTROPY",
]
