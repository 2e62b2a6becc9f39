"""Self-gravitating potential V and the integrals J(k, r) = int_0^inf s^r / Delta^k ds.

V depends on a configuration only through the invariants I1, I2 (the
constant term of Delta is fixed to 1, i.e. V is extended off SL(3)
independently of I3).  For spheroids every J needed below has an elementary
closed form; these are evaluated through :mod:`._series` so that small
eccentricities do not suffer from cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from . import numerics
from ._series import ClosedForm
from .errors import DomainError, UnsupportedPair
from .kinematics import Kind, PhysicalParams, Spheroid, invariants
from .numerics import DEFAULT_QUAD, QuadratureSpec

SUPPORTED_PAIRS = ((1, 0), (3, 1), (3, 2), (5, 2), (5, 3), (5, 4))

# quadrature used when the value feeds a finite-difference oracle
FINE_QUAD = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=4000)


def delta(F, s: float) -> float:
    I1, I2, _ = invariants(F)
    rad = s ** 3 + I1 * s ** 2 + I2 * s + 1.0
    if not rad > 0:
        raise DomainError(f"Delta radicand {rad!r} is not positive")
    return math.sqrt(rad)


def _check_pair(k, r):
    if not 3 * k > 2 * (r + 1):
        raise DomainError(f"J({k}, {r}) diverges")


def J_quad_invariants(I1: float, I2: float, k: int, r: int,
                      spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """J(k, r) for arbitrary invariants by quadrature over (0, inf)."""
    _check_pair(k, r)

    def integrand(s):
        rad = ((s + I1) * s + I2) * s + 1.0
        return s ** r / rad ** (0.5 * k)

    return numerics.integrate(integrand, 0.0, math.inf, spec, vectorized=True)


def J_quad_F(F, k: int, r: int, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    I1, I2, _ = invariants(F)
    return J_quad_invariants(I1, I2, k, r, spec)


def J_xform(sph: Spheroid, k: int, r: int, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """J(k, r) from the finite-interval representation on (0, 1) in x = cos(theta)."""
    _check_pair(k, r)
    e = sph.ecc
    m = 3 * (k - 1) - 2 * r
    w = 1.0 - e * e
    if sph.kind is Kind.PROLATE:
        pre = 2.0 / w ** ((2 * (r + 1) - 3 * k) / 3.0)
        power = float(k)
    else:
        pre = 2.0 / w ** ((2 * (r + 1) - 3 * k) / 6.0)
        power = 0.5 * k

    def integrand(x):
        return (1 - x * x) ** r * x ** m / (1 - e * e * x * x) ** power

    return pre * numerics.integrate(integrand, 0.0, 1.0, spec, vectorized=True)


def J_quad(sph: Spheroid, k: int, r: int, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """J(k, r) on a spheroid by quadrature of the s-integral.

    For oblate and prolate configurations the value is cross-checked against
    the x-representation; a disagreement above ten tolerances raises.
    """
    value = J_quad_F(sph.matrix, k, r, spec)
    if sph.kind is not Kind.SPHERE:
        other = J_xform(sph, k, r, spec)
        tol = 10 * max(spec.abs_tol, spec.rel_tol * abs(value))
        if abs(value - other) > tol:
            raise ArithmeticError(
                f"J({k},{r}) quadratures disagree: {value!r} vs {other!r}")
    return value


# Bracket integrals int_0^1 (1-x^2)^r x^m (1-e^2 x^2)^(-q) dx as closed forms.
# Oblate: q = k/2, arcsin and sqrt(1-e^2) terms.  Prolate: q = k, arctanh and
# rational terms.  Obtained by reducing x^(2n) against the binomial power and
# integrating the base cases; cross-checked against quadrature in the tests.
_OBLATE = {
    (1, 0): ClosedForm([([1], ("asin",))], 1),
    (3, 1): ClosedForm([([0, -15, 0, 2], ("sqrt1m",)),
                        ([15, 0, -12], ("asin",))], 7, Fraction(1, 8)),
    (3, 2): ClosedForm([([0, 15, 0, -14], ("sqrt1m",)),
                        ([-15, 0, 24, 0, -8], ("asin",))], 7, Fraction(1, 8)),
    (5, 2): ClosedForm([([0, -3465, 0, 2730, 0, -168, 0, -16], ("sqrt1m",)),
                        ([3465, 0, -5040, 0, 1680], ("asin",))], 13, Fraction(1, 384)),
    (5, 3): ClosedForm([([0, 1155, 0, -1750, 0, 616, 0, -16], ("sqrt1m",)),
                        ([-1155, 0, 2520, 0, -1680, 0, 320], ("asin",))], 13, Fraction(1, 128)),
    (5, 4): ClosedForm([([0, -1155, 0, 2590, 0, -1736, 0, 304], ("sqrt1m",)),
                        ([1155, 0, -3360, 0, 3360, 0, -1280, 0, 128], ("asin",))], 13,
                       Fraction(1, 128)),
}
_PROLATE = {
    (1, 0): ClosedForm([([1], ("atanh",))], 1),
    (3, 1): ClosedForm([([0, 15, 0, -13], ("inv1m",)),
                        ([-15, 0, 3], ("atanh",))], 7, Fraction(1, 8)),
    (3, 2): ClosedForm([([0, -15, 0, 1], ()),
                        ([15, 0, -6, 0, -1], ("atanh",))], 7, Fraction(1, 8)),
    (5, 2): ClosedForm([([0, -3465, 0, 7665, 0, -5103, 0, 919], ("inv1m", "inv1m")),
                        ([3465, 0, -1890, 0, 105], ("atanh",))], 13, Fraction(1, 384)),
    (5, 3): ClosedForm([([0, 1155, 0, -1715, 0, 581, 0, -5], ("inv1m",)),
                        ([-1155, 0, 945, 0, -105, 0, -5], ("atanh",))], 13, Fraction(1, 128)),
    (5, 4): ClosedForm([([0, -1155, 0, 875, 0, -21, 0, -3], ()),
                        ([1155, 0, -1260, 0, 210, 0, 20, 0, 3], ("atanh",))], 13,
                       Fraction(1, 128)),
}


def J_closed(sph: Spheroid, k: int, r: int) -> float:
    """J(k, r) for a spheroid from its elementary closed form."""
    if (k, r) not in SUPPORTED_PAIRS:
        raise UnsupportedPair(f"no closed form for J({k}, {r})")
    e = sph.ecc
    if sph.kind is Kind.PROLATE:
        form = _PROLATE[(k, r)]
        expo = (2 * (r + 1) - 3 * k) / 3.0
    else:
        # the sphere is the e -> 0 limit of either family
        form = _OBLATE[(k, r)]
        expo = (2 * (r + 1) - 3 * k) / 6.0
    return 2.0 * (1.0 - e * e) ** (-expo) * form(e)


@dataclass(frozen=True)
class PotentialDerivs:
    """V and its partial derivatives with respect to I1 and I2."""

    V: float
    V1: float
    V2: float
    V11: float
    V12: float
    V22: float

    @classmethod
    def from_J(cls, J, R: float) -> "PotentialDerivs":
        return cls(V=-R * J(1, 0),
                   V1=0.5 * R * J(3, 2),
                   V2=0.5 * R * J(3, 1),
                   V11=-0.75 * R * J(5, 4),
                   V12=-0.75 * R * J(5, 3),
                   V22=-0.75 * R * J(5, 2))

    def scaled(self, factor: float) -> "PotentialDerivs":
        return PotentialDerivs(*(factor * getattr(self, f.name) for f in fields(self)))

    def in_r_units(self, params: PhysicalParams) -> "PotentialDerivs":
        return self.scaled(1.0 / params.R)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def potential_derivs(sph: Spheroid, params: PhysicalParams = PhysicalParams()) -> PotentialDerivs:
    return PotentialDerivs.from_J(lambda k, r: J_closed(sph, k, r), params.R)


def potential_derivs_at(F, params: PhysicalParams = PhysicalParams(),
                        spec: QuadratureSpec = FINE_QUAD) -> PotentialDerivs:
    """Derivatives of V at an arbitrary configuration, by quadrature."""
    I1, I2, _ = invariants(F)
    return PotentialDerivs.from_J(lambda k, r: J_quad_invariants(I1, I2, k, r, spec), params.R)


def potential_value(F, params: PhysicalParams = PhysicalParams(),
                    spec: QuadratureSpec = FINE_QUAD) -> float:
    """V(F) = -R int_0^inf ds / Delta(F) for any F (extension independent of I3)."""
    return -params.R * J_quad_F(F, 1, 0, spec)


def spheroid_of(F, tol: float = 1e-13):
    """The :class:`Spheroid` whose matrix equals ``F``, or None."""
    F = np.asarray(F, dtype=float)
    d = np.diag(F)
    if np.max(np.abs(F - np.diag(d))) > 0 or abs(d[0] - d[1]) > tol * abs(d[0]):
        return None
    a, c = d[0], d[2]
    if abs(a * a * c - 1.0) > tol:
        return None
    if abs(a - c) <= tol:
        return Spheroid.sphere()
    if a > c:
        sph = Spheroid.oblate(math.sqrt(1.0 - (c / a) ** 2))
    else:
        sph = Spheroid.prolate(math.sqrt(1.0 - (a / c) ** 2))
    if np.max(np.abs(sph.matrix - F)) > 10 * tol * max(a, c):
        return None
    return sph


def derivs_for(F, params: PhysicalParams = PhysicalParams()) -> PotentialDerivs:
    """Closed-form derivatives when ``F`` is a unimodular spheroid, quadrature otherwise."""
    sph = spheroid_of(F)
    if sph is not None:
        return potential_derivs(sph, params)
    return potential_derivs_at(F, params)
