"""Oracle suites behind the ``verify`` command.

Each check compares a computed value with an independent reference; the
``perturb`` factor scales every computed value and exists as a negative
control (any factor far from 1 must make the run fail).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import equilibria as eq
from . import inertia, numerics, potential, stability
from .kinematics import PhysicalParams, Spheroid, VelocityPair, rotation
from .potential import SUPPORTED_PAIRS


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str


class _Collector:
    def __init__(self, suite: str, perturb: float):
        self.suite = suite
        self.perturb = perturb
        self.checks: list[Check] = []

    def close(self, name, value, ref, rtol, atol=0.0):
        value = np.asarray(value, dtype=float) * self.perturb
        ref = np.asarray(ref, dtype=float)
        err = float(np.max(np.abs(value - ref))) if value.size else 0.0
        scale = float(np.max(np.abs(ref))) if ref.size else 0.0
        ok = err <= max(atol, rtol * scale)
        self.checks.append(Check(self.suite, name, ok, f"err {err:.2e} (scale {scale:.3g})"))

    def true(self, name, cond, detail=""):
        self.checks.append(Check(self.suite, name, bool(cond), detail))

    def below(self, name, value, bound):
        value = abs(value) * self.perturb if self.perturb != 1.0 else abs(value)
        # a perturbed run scales small residuals too; give it a floor to fail on
        if self.perturb != 1.0:
            value = max(value, abs(self.perturb - 1.0))
        self.checks.append(Check(self.suite, name, value <= bound, f"{value:.2e} <= {bound:.1e}"))


E_GRID = [round(0.05 * k, 2) for k in range(1, 20)]


def _numerics(c: _Collector, params):
    q = numerics.integrate(lambda s: s ** 2 / (1 + s) ** 4.5, 0.0, math.inf)
    c.close("beta integral 16/105", q, 16 / 105, 1e-12)
    c.close("sqrt(2) by root finding", numerics.find_root(lambda x: x * x - 2, 1, 2), math.sqrt(2),
            1e-12)
    m = 2 * np.eye(5)
    m[0, 1] = m[1, 0] = 1
    c.close("jacobi eigenvalues", numerics.sym_eigenvalues(4 * m), [4, 8, 8, 8, 12], 1e-12)
    c.close("complex determinant", abs(numerics.complex_det(np.diag([2, 3j]))), 6, 1e-14)


def _potential(c: _Collector, params):
    for kind, make in (("oblate", Spheroid.oblate), ("prolate", Spheroid.prolate)):
        worst = 0.0
        for e in (0.1, 0.3, 0.5, 0.7, 0.9):
            sph = make(e)
            for k, r in SUPPORTED_PAIRS:
                q = potential.J_quad(sph, k, r)
                worst = max(worst, abs(potential.J_closed(sph, k, r) * c.perturb / q - 1))
        c.true(f"J closed vs quadrature ({kind})", worst <= 1e-9, f"max rel {worst:.1e}")
    sph0 = Spheroid.sphere()
    c.close("sphere J(3,2) = 16/105", potential.J_closed(sph0, 3, 2), 16 / 105, 1e-12)
    c.close("sphere J(3,1) = 4/35", potential.J_closed(sph0, 3, 1), 4 / 35, 1e-12)
    d = potential.potential_derivs(sph0, params)
    c.close("V1 + V2 = 2R/15", d.V1 + d.V2, 2 * params.R / 15, 1e-12)
    # dV/dI1 at fixed I2 along a two-parameter family of diagonal configurations
    I1, I2, h = 3.3, 3.25, 1e-4
    V = [-params.R * potential.J_quad_invariants(I1 + s * h, I2, 1, 0, potential.FINE_QUAD)
         for s in (1, -1)]
    d1 = 0.5 * params.R * potential.J_quad_invariants(I1, I2, 3, 2, potential.FINE_QUAD)
    c.close("dV/dI1 by finite differences", (V[0] - V[1]) / (2 * h), d1, 1e-6)


def _inertia(c: _Collector, params):
    rng = np.random.default_rng(7)
    F = np.eye(3) + 0.2 * rng.standard_normal((3, 3))
    M = inertia.locked_inertia(F, params)
    worst = 0.0
    for _ in range(20):
        x = VelocityPair.from_vector(rng.standard_normal(6))
        y = VelocityPair.from_vector(rng.standard_normal(6))
        a = x.as_vector() @ M @ y.as_vector()
        b = inertia.locked_inertia_form(F, x, y, params)
        worst = max(worst, abs(a * c.perturb - b) / max(abs(b), 1e-300))
    c.true("block form = trace form", worst <= 1e-12, f"max rel {worst:.1e}")
    Lr, Rr = rotation([1, 2, 3], 0.7), rotation([-1, 0, 2], 1.1)
    x = VelocityPair.from_vector(rng.standard_normal(6))
    c.close("equivariance of the locked inertia",
            inertia.locked_inertia_form(Lr @ F @ Rr.T, VelocityPair(Lr @ x.xi_L, Rr @ x.xi_R),
                                        VelocityPair(Lr @ x.xi_L, Rr @ x.xi_R), params),
            inertia.locked_inertia_form(F, x, x, params), 1e-12)
    xi = VelocityPair.from_vector(0.5 * rng.standard_normal(6))
    lam = 0.3
    G = inertia.d_v2aug(F, xi, lam, params)
    fd = numerics.fd_derivative(lambda X: inertia.v2aug(X, xi, lam, params), F, 1, 1e-5)
    c.close("gradient vs finite differences", G, fd, 1e-7)
    st = eq.maclaurin(0.6, params)
    vs = stability.slice_basis(st.sph).vectors
    d = potential.potential_derivs(st.sph, params)
    H = np.array([[inertia.hess_v2aug(st.F, st.xi, st.lam, a, b, params, d) for b in vs]
                  for a in vs])
    h = 1e-5

    def grad_along(X, B):
        D = potential.potential_derivs_at(X, params)
        return float(np.sum(inertia.d_v2aug(X, st.xi, st.lam, params, D) * B))

    fdH = np.array([[(grad_along(st.F + h * b, a) - grad_along(st.F - h * b, a)) / (2 * h)
                     for b in vs] for a in vs])
    c.close("Hessian vs finite differences (MacLaurin e=0.6)", H, fdH, 1e-5)


def _equilibria(c: _Collector, params):
    worst_res = 0.0
    worst_om = 0.0
    for e in E_GRID:
        for st in (eq.maclaurin(e, params), eq.transversal(e, 1, params),
                   eq.transversal(e, -1, params)):
            worst_res = max(worst_res, eq.residual_norm(st, params) / params.R)
        worst_om = max(worst_om, abs(eq.maclaurin_omega2(e) * c.perturb
                                     / eq.maclaurin_omega2_quad(e) - 1))
    c.below("equilibrium residuals / R", worst_res, 1e-10)
    c.true("Omega^2 closed form vs quadrature", worst_om <= 1e-9, f"max rel {worst_om:.1e}")
    st = eq.transversal(0.5, 1, params)
    from dataclasses import replace
    rejected = replace(st, lam=eq.transversal_lambda(0.5, params, -1))
    c.true("alternative transversal multiplier leaves a residual",
           eq.residual_norm(rejected, params) > 1e-4 * params.R)
    worst = 0.0
    for e in E_GRID:
        fp, fm = eq.vorticity_ratio(e, 1), eq.vorticity_ratio(e, -1)
        worst = max(worst, abs(fp * fm - 1),
                    abs(eq.transversal_omega2(e, 1) * fp * c.perturb
                        / (eq.transversal_omega2(e, -1) * fm) - 1))
    c.true("branch exchange f+ f- = 1, omega+^2 f+ = omega-^2 f-", worst <= 1e-12,
           f"max rel {worst:.1e}")


def _stability(c: _Collector, params):
    worst = 0.0
    for fam in ("maclaurin", "transversal+", "transversal-"):
        for e in (0.1, 0.3, 0.5, 0.7, 0.9):
            pairs = ((stability.arnold_form(fam, e, params), stability.arnold_closed(fam, e, params)),
                     (stability.correction_matrix(fam, e, params),
                      stability.correction_closed(fam, e, params)),
                     (stability.restricted_hessian(fam, e, params),
                      stability.restricted_hessian_closed(fam, e, params)))
            for a, b in pairs:
                worst = max(worst, float(np.max(np.abs(a * c.perturb - b)) / np.max(np.abs(b))))
    c.true("assembled forms vs closed forms", worst <= 1e-9, f"max rel {worst:.1e}")
    r = stability.find_e0(params)
    c.close("e0", r.e0, 0.952887, 0, atol=1e-5)
    c.close("axis ratio at e0", r.axis_ratio, 0.303327, 0, atol=1e-5)
    worst = 0.0
    for e in (0.5, 0.94, 0.96):
        for chk in stability.linearized_eigenvalues(e, params):
            worst = max(worst, chk.residual)
    c.below("linearized eigenvalues annihilate det(L - eps)", worst, 1e-8)
    H = stability.restricted_hessian("spherical", 0.0, params)
    s = 2 * params.R / 15
    c.close("spherical spectrum", numerics.sym_eigenvalues(H), [4 * s, 8 * s, 8 * s, 8 * s, 12 * s],
            1e-10)
    verdicts = {e: stability.stability_report("maclaurin", e, params).verdict
                for e in (0.5, 0.94, 0.96)}
    c.true("MacLaurin verdicts around e0",
           verdicts[0.5] is verdicts[0.94] is stability.Verdict.STABLE
           and verdicts[0.96] is stability.Verdict.UNSTABLE, str({k: v.value for k, v in verdicts.items()}))


SUITES: dict[str, Callable] = {
    "numerics": _numerics,
    "potential": _potential,
    "inertia": _inertia,
    "equilibria": _equilibria,
    "stability": _stability,
}


def run(only=None, perturb: float = 1.0, params: PhysicalParams = PhysicalParams()):
    """Run the selected suites; returns (checks, elapsed seconds)."""
    names = list(SUITES) if not only else list(only)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    start = time.perf_counter()
    checks = []
    for name in names:
        col = _Collector(name, perturb)
        try:
            SUITES[name](col, params)
        except Exception as exc:   # a crashing oracle is a failed check
            col.checks.append(Check(name, "suite raised", False, repr(exc)))
        checks.extend(col.checks)
    return checks, time.perf_counter() - start
