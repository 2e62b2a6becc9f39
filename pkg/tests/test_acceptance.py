"""Acceptance criteria, one test per criterion.

Each test records its outcome so the terminal summary prints one PASS/FAIL line
per criterion.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from riemann_spheroids import equilibria as eq
from riemann_spheroids import inertia, numerics, stability, verify
from riemann_spheroids.equilibria import Family
from riemann_spheroids.kinematics import PhysicalParams, Spheroid
from riemann_spheroids.potential import potential_derivs, potential_derivs_at
from riemann_spheroids.stability import Verdict

P = PhysicalParams()
GRID = [round(0.05 * k, 2) for k in range(1, 20)]


@pytest.fixture
def criterion(record_property, request):
    def tag(num, title):
        record_property("criterion", num)
        record_property("title", title)
        request.node._crit = (num, title)

    def detail(text):
        record_property("detail", text)
        print(f"criterion {request.node._crit[0]}: {text}")

    tag.detail = detail
    return tag


def test_e0_reproduction(criterion):
    criterion(1, "e0 and axis ratio")
    t = time.perf_counter()
    r = stability.find_e0(P)
    dt = time.perf_counter() - t
    criterion.detail(f"e0={r.e0:.9f} c/a={r.axis_ratio:.9f} in {dt:.2f}s")
    assert abs(r.e0 - 0.952887) <= 1e-5
    assert abs(r.axis_ratio - 0.303327) <= 1e-5
    assert dt < 5


def test_spherical_spectrum(criterion):
    criterion(2, "spherical spectrum {12,8,8,8,4}(V1+V2)")
    d = potential_derivs(Spheroid.sphere(), P)
    unit = 2 * P.R / 15
    assert abs(d.V1 + d.V2 - unit) <= 1e-13 * unit
    eigs = numerics.sym_eigenvalues(stability.restricted_hessian("spherical", 0.0, P))
    want = [4 * unit, 8 * unit, 8 * unit, 8 * unit, 12 * unit]
    err = max(abs(a - b) / b for a, b in zip(eigs, want))
    verdict = stability.stability_report("spherical", 0.0, P).verdict
    criterion.detail(f"max rel err {err:.1e}, verdict {verdict.value}")
    assert err <= 1e-10
    assert verdict is Verdict.STABLE


def test_maclaurin_law(criterion):
    criterion(3, "MacLaurin closed form vs quadrature")
    t = time.perf_counter()
    worst = max(abs(eq.maclaurin_omega2(e) / eq.maclaurin_omega2_quad(e) - 1) for e in GRID)
    dt = time.perf_counter() - t
    criterion.detail(f"max rel {worst:.1e} in {dt:.2f}s")
    assert worst <= 1e-9 and dt < 10


def test_residual_certification(criterion):
    criterion(4, "equilibrium residuals and transversal multiplier")
    worst = eq.residual_norm(eq.spherical(P), P) / P.R
    rejected = math.inf
    for e in GRID:
        for state in (eq.maclaurin(e, P), eq.transversal(e, 1, P), eq.transversal(e, -1, P)):
            worst = max(worst, eq.residual_norm(state, P) / P.R)
            if state.family.is_transversal:
                bad = replace(state, lam=eq.transversal_lambda(e, P, -1))
                rejected = min(rejected, eq.residual_norm(bad, P) / P.R)
    criterion.detail(f"max residual {worst:.1e} R, rejected multiplier min residual {rejected:.1e} R")
    assert worst <= 1e-10
    assert rejected > 1e-10


def _near_equilibria(rng):
    for fam in Family:
        for e in (0.3, 0.5, 0.7, 0.8, 0.9):
            st = eq.build(fam, 0.0 if fam is Family.SPHERICAL else e, P)
            dF = 0.01 * rng.standard_normal((3, 3))
            yield fam, st, st.F + dF


def test_oracle_equivalence(criterion):
    criterion(5, "gradient/Hessian vs finite differences, assembled vs closed forms")
    rng = np.random.default_rng(2024)
    h = 1e-5
    g_worst = h_worst = 0.0
    for fam, st, F in _near_equilibria(rng):
        G = inertia.d_v2aug(F, st.xi, st.lam, P, potential_derivs_at(F, P))
        fd = numerics.fd_derivative(lambda X: inertia.v2aug(X, st.xi, st.lam, P), F, 1, h)
        g_worst = max(g_worst, np.abs(G - fd).max() / np.abs(G).max())
        A, B = rng.standard_normal((2, 3, 3))

        def along(X):
            return float(np.sum(inertia.d_v2aug(X, st.xi, st.lam, P, potential_derivs_at(X, P)) * B))

        fdH = (along(F + h * A) - along(F - h * A)) / (2 * h)
        H = inertia.hess_v2aug(F, st.xi, st.lam, A, B, P, potential_derivs_at(F, P))
        h_worst = max(h_worst, abs(H - fdH) / abs(H))
    f_worst = 0.0
    for fam in ("maclaurin", "transversal+", "transversal-"):
        for e in GRID:
            for got, want in (
                    (stability.arnold_form(fam, e, P), stability.arnold_closed(fam, e, P)),
                    (stability.correction_matrix(fam, e, P), stability.correction_closed(fam, e, P)),
                    (stability.restricted_hessian(fam, e, P),
                     stability.restricted_hessian_closed(fam, e, P))):
                f_worst = max(f_worst, np.abs(got - want).max() / np.abs(want).max())
    criterion.detail(f"gradient {g_worst:.1e}, Hessian {h_worst:.1e}, forms {f_worst:.1e}")
    assert g_worst <= 1e-5 and h_worst <= 1e-5
    assert f_worst <= 1e-9


def test_stability_region(criterion):
    criterion(6, "stability region and sign claims")
    mac_stable = [round(x, 2) for x in np.arange(0.10, 0.9451, 0.01)]
    bad = []
    for e in mac_stable:
        rep = stability.stability_report("maclaurin", e, P)
        if rep.verdict is not Verdict.STABLE or not rep.s1 > 0:
            bad.append(("maclaurin", e, rep.verdict.value))
    for e in (0.96, 0.97, 0.98):
        rep = stability.stability_report("maclaurin", e, P)
        if rep.verdict is not Verdict.UNSTABLE or not rep.s1 > 0:
            bad.append(("maclaurin", e, rep.verdict.value))
    for fam in ("transversal+", "transversal-"):
        for e in [round(x, 2) for x in np.arange(0.10, 0.9001, 0.01)]:
            rep = stability.stability_report(fam, e, P)
            if rep.verdict is not Verdict.STABLE or not (rep.trU > 0 and rep.detU > 0):
                bad.append((fam, e, rep.verdict.value))
    criterion.detail(f"{len(bad)} mismatches" + (f": {bad[:5]}" if bad else ""))
    assert not bad


def test_eigenvalue_collision(criterion):
    criterion(7, "eigenvalue collision at e0")
    e0 = stability.find_e0(P).e0
    omega = math.sqrt(eq.maclaurin_omega2(e0) * P.pi_rho_G)
    vals = {}
    worst = 0.0
    for e in (0.94, e0, 0.96):
        checks = stability.linearized_eigenvalues(e, P)
        worst = max(worst, max(c.residual for c in checks))
        vals[e] = next(c.value for c in checks if c.label == "eps3+")
    before, at, after = vals[0.94], vals[e0], vals[0.96]
    criterion.detail(f"eps3 {before:.4g} -> {abs(at):.1e} -> {after:.4g}, det residual {worst:.1e}")
    assert before.real == 0 and before.imag > 0
    assert abs(at) <= 1e-6 * omega
    assert after.imag == 0 and after.real > 0
    assert worst <= 1e-8


def test_branch_symmetry(criterion):
    criterion(8, "branch exchange f+ f- = 1, omega+^2 f+ = omega-^2 f-")
    worst = 0.0
    for e in GRID:
        fp, fm = eq.vorticity_ratio(e, 1), eq.vorticity_ratio(e, -1)
        worst = max(worst, abs(fp * fm - 1),
                    abs(eq.transversal_omega2(e, 1) * fp / (eq.transversal_omega2(e, -1) * fm) - 1))
    criterion.detail(f"max rel {worst:.1e}")
    assert worst <= 1e-12


def test_verify_suite(criterion):
    criterion(9, "full verify suite under 60 s")
    checks, elapsed = verify.run()
    failed = [c.name for c in checks if not c.passed]
    criterion.detail(f"{len(checks) - len(failed)}/{len(checks)} checks in {elapsed:.1f}s")
    assert not failed and elapsed < 60
