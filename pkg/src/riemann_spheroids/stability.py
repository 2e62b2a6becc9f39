"""Nonlinear stability of the symmetric equilibria by the singular reduced
energy-momentum method.

Everything is assembled from the general definitions (splittings of the Lie
algebra, the locked inertia, ad and ad*) at a concrete equilibrium; the known
closed forms are exposed separately and used as cross-checks.

Lie-algebra elements are 6-vectors (xi_L | xi_R), identified with their duals
through the Euclidean product, under which ad*_g mu = -ad_g mu.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import numerics
from ._series import ClosedForm
from .equilibria import EquilibriumState, Family, build
from .errors import DomainError
from .inertia import d_locked_inertia, d_v2aug, hess_v2aug, locked_inertia
from .kinematics import Kind, PhysicalParams, Spheroid, VelocityPair, check_ecc, generator
from .potential import potential_derivs

_DEFAULT = PhysicalParams()
_SQ2 = math.sqrt(2.0)


class Verdict(enum.Enum):
    STABLE = "NonlinearlyStable"
    UNSTABLE = "Unstable"
    INCONCLUSIVE = "Inconclusive"


# --------------------------------------------------------------------------
# Lie algebra and subspaces


def ad(g, x) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    x = np.asarray(x, dtype=float)
    return np.concatenate([np.cross(g[:3], x[:3]), np.cross(g[3:], x[3:])])


def coad(g, mu) -> np.ndarray:
    """ad*_g mu under the Euclidean identification."""
    return -ad(g, mu)


@dataclass(frozen=True)
class SubspaceBasis:
    label: str
    vectors: tuple

    def __len__(self):
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """Vectors as columns (Lie-algebra bases only)."""
        if not self.vectors:
            return np.zeros((6, 0))
        return np.column_stack(self.vectors)


def _pair(left, right) -> np.ndarray:
    return np.concatenate([np.asarray(left, dtype=float), np.asarray(right, dtype=float)])


_E = np.eye(3)
_ZERO = np.zeros(3)


def _algebra_split(family: Family):
    e1, e2, e3 = _E
    if family is Family.SPHERICAL:
        gF = [_pair(v, v) / _SQ2 for v in _E]
        p = [_pair(v, -v) / _SQ2 for v in _E]
        t = []
    elif family is Family.MACLAURIN:
        gF = [_pair(e3, e3) / _SQ2]
        p = [_pair(e3, -e3) / _SQ2]
        t = [_pair(e1, _ZERO), _pair(_ZERO, e1), _pair(e2, _ZERO), _pair(_ZERO, e2)]
    else:
        gF = [_pair(e3, e3) / _SQ2]
        p = [_pair(e2, _ZERO), _pair(_ZERO, e2)]
        t = [_pair(e1, _ZERO), _pair(_ZERO, e1), _pair(e3, -e3) / _SQ2]
    return (SubspaceBasis("g_F", tuple(gF)), SubspaceBasis("p", tuple(p)),
            SubspaceBasis("t", tuple(t)))


def slice_basis(sph: Spheroid) -> SubspaceBasis:
    """Orthogonal slice to the group orbit inside T_F SL(3)."""
    if sph.kind is Kind.SPHERE:
        mats = []
        for i, j in ((0, 0), (1, 1)):
            m = np.zeros((3, 3))
            m[i, j] = 1.0
            m[2, 2] = -1.0
            mats.append(m)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            m = np.zeros((3, 3))
            m[i, j] = m[j, i] = 1.0
            mats.append(m)
        return SubspaceBasis("slice", tuple(mats))
    ratio = sph.c / sph.a
    s1 = np.diag([1.0, 1.0, -2.0 * ratio])
    s2 = np.diag([1.0, -1.0, 0.0])
    s3 = np.zeros((3, 3))
    s3[0, 1] = s3[1, 0] = 1.0
    return SubspaceBasis("slice", (s1, s2, s3))


def _nullspace(C, pivot_order, tol=1e-12):
    """Null space of C with pivots chosen in ``pivot_order``; the remaining
    (free) variables get unit coefficients, basis ordered by free index."""
    C = np.array(C, dtype=float)
    m, n = C.shape
    scale = max(1.0, float(np.max(np.abs(C)))) if C.size else 1.0
    rows = C.copy()
    pivots = []
    r = 0
    for col in pivot_order:
        if r >= m:
            break
        i = r + int(np.argmax(np.abs(rows[r:, col])))
        if abs(rows[i, col]) <= tol * scale:
            continue
        rows[[r, i]] = rows[[i, r]]
        rows[r] /= rows[r, col]
        for k in range(m):
            if k != r:
                rows[k] -= rows[k, col] * rows[r]
        pivots.append((r, col))
        r += 1
    pcols = {c for _, c in pivots}
    basis = []
    for fcol in range(n):
        if fcol in pcols:
            continue
        v = np.zeros(n)
        v[fcol] = 1.0
        for ri, pc in pivots:
            v[pc] = -rows[ri, fcol]
        basis.append(v)
    return basis


# --------------------------------------------------------------------------
# Assembled data at an equilibrium


@dataclass(frozen=True)
class _Setup:
    state: EquilibriumState
    params: PhysicalParams
    g_F: SubspaceBasis
    p: SubspaceBasis
    t: SubspaceBasis
    q_mu: SubspaceBasis
    q_coords: np.ndarray          # q_mu basis in t coordinates (columns)
    slice: SubspaceBasis
    sigma_int: SubspaceBasis
    sigma_coords: np.ndarray      # rows: (gamma coords on q_mu | slice coords)
    xi_perp: np.ndarray
    mu: np.ndarray
    inertia: np.ndarray           # 6x6 locked inertia
    inertia0: np.ndarray          # restriction to p + t in the (p, t) basis
    gradient_norm: float


def _check_family_e(family: Family, e: float) -> float:
    if family is Family.SPHERICAL:
        if e not in (0, 0.0):
            raise DomainError("the spherical equilibrium has e = 0")
        return 0.0
    return check_ecc(e)


@lru_cache(maxsize=512)
def _setup(family: Family, e: float, params: PhysicalParams) -> _Setup:
    e = _check_family_e(family, e)
    state = build(family, e, params)
    F = state.F
    gF, p, t = _algebra_split(family)
    I = locked_inertia(F, params)
    Pm, Tm = p.matrix(), t.matrix()
    Bpt = np.hstack([Pm, Tm])
    I0 = Bpt.T @ I @ Bpt
    xi = state.xi.as_vector()
    xi_perp = Pm @ (Pm.T @ xi)
    mu = state.mu.as_vector()

    # q^mu: gamma in t with the g_F component of ad*_gamma mu vanishing
    C = np.array([[h @ coad(tv, mu) for tv in t.vectors] for h in gF.vectors]) \
        if len(t) else np.zeros((len(gF), 0))
    qc = _nullspace(C, list(range(len(t)))[::-1]) if len(t) else []
    q_vecs = tuple(Tm @ c for c in qc)
    q_coords = np.column_stack(qc) if qc else np.zeros((len(t), 0))
    q = SubspaceBasis("q_mu", q_vecs)

    # internal variations: gamma_M(F) + A with (DI.(.))(xi_perp) in p*
    sl = slice_basis(state.sph)
    xp = VelocityPair.from_vector(xi_perp)
    nq, ns = len(q), len(sl)

    def tangent(coords):
        X = sum((coords[nq + i] * s for i, s in enumerate(sl.vectors)), np.zeros((3, 3)))
        if nq:
            gam = sum(coords[i] * q_vecs[i] for i in range(nq))
            X = X + generator(VelocityPair.from_vector(gam), F)
        return X

    probes = list(gF.vectors) + list(t.vectors)
    cols = []
    for j in range(nq + ns):
        unit = np.zeros(nq + ns)
        unit[j] = 1.0
        X = tangent(unit)
        cols.append([d_locked_inertia(F, X, xp, VelocityPair.from_vector(w), params)
                     for w in probes])
    Cs = np.array(cols).T
    sig = _nullspace(Cs, list(range(nq)) + list(range(nq, nq + ns)))
    sigma = SubspaceBasis("sigma_int", tuple(tangent(c) for c in sig))
    grad = d_v2aug(F, xp, state.lam, params)
    return _Setup(state, params, gF, p, t, q, q_coords, sl, sigma, np.array(sig), xi_perp, mu,
                  I, I0, float(np.max(np.abs(grad))))


def _fam(family) -> Family:
    return Family.parse(family)


def bases_for(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> dict:
    s = _setup(_fam(family), float(e), params)
    return {b.label: b for b in (s.g_F, s.p, s.t, s.q_mu, s.slice, s.sigma_int)}


def q_mu(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> SubspaceBasis:
    return _setup(_fam(family), float(e), params).q_mu


def inertia0(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """Locked inertia restricted to p + t, in the ordered basis (p..., t...)."""
    return _setup(_fam(family), float(e), params).inertia0


def _pt_matrix(s: _Setup) -> np.ndarray:
    return np.hstack([s.p.matrix(), s.t.matrix()])


def _inertia0_inv(s: _Setup, covector) -> np.ndarray:
    """I0^{-1} of a covector in p* + t*, returned as a Lie-algebra vector."""
    B = _pt_matrix(s)
    return B @ np.linalg.solve(s.inertia0, B.T @ covector)


def arnold_form(family, e: float = 0.0, params: PhysicalParams = _DEFAULT,
                coadjoint: bool = True) -> np.ndarray:
    """Arnold form on the q^mu basis.

    Lambda(g) = I0^{-1}(ad*_g mu) + Proj_{p+t}[ad_g(I0^{-1} mu)].  With
    ``coadjoint=False`` the first term uses ad_g mu instead.
    """
    s = _setup(_fam(family), float(e), params)
    n = len(s.q_mu)
    if n == 0:
        return np.zeros((0, 0))
    B = _pt_matrix(s)
    base = _inertia0_inv(s, s.mu)

    def lam(g):
        first = coad(g, s.mu) if coadjoint else ad(g, s.mu)
        return _inertia0_inv(s, first) + B @ (B.T @ ad(g, base))

    Ar = np.empty((n, n))
    for i, gi in enumerate(s.q_mu.vectors):
        for j, gj in enumerate(s.q_mu.vectors):
            Ar[i, j] = coad(gi, s.mu) @ lam(gj)
    return Ar


def xi_form(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """Xi(g1, g2) = -<mu, ad_g1 g2> on the q^mu basis."""
    s = _setup(_fam(family), float(e), params)
    vecs = s.q_mu.vectors
    return np.array([[-(s.mu @ ad(a, b)) for b in vecs] for a in vecs]).reshape(len(vecs),
                                                                                 len(vecs))


def _corr_covector(s: _Setup, X) -> np.ndarray:
    xp = VelocityPair.from_vector(s.xi_perp)
    return np.array([d_locked_inertia(s.state.F, X, xp, VelocityPair.from_vector(w), s.params)
                     for w in np.eye(6)])


def correction_term(family, e: float, A, B, params: PhysicalParams = _DEFAULT) -> float:
    """corr(A, B) = <P[(DI.A)(xi_perp)], I0^{-1} P[(DI.B)(xi_perp)]>."""
    s = _setup(_fam(family), float(e), params)
    Bm = _pt_matrix(s)
    ca = Bm.T @ _corr_covector(s, A)
    cb = Bm.T @ _corr_covector(s, B)
    return float(ca @ np.linalg.solve(s.inertia0, cb))


def correction_matrix(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    s = _setup(_fam(family), float(e), params)
    vs = s.sigma_int.vectors
    return np.array([[correction_term(family, e, a, b, params) for b in vs] for a in vs])


def sigma_hessian(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """Hessian of the twice-augmented potential (at xi_perp) on the Sigma_int basis."""
    s = _setup(_fam(family), float(e), params)
    if s.gradient_norm > 1e-10 * params.R:
        raise ArithmeticError(f"not a critical point: gradient {s.gradient_norm:.3g}")
    F = s.state.F
    xp = VelocityPair.from_vector(s.xi_perp)
    d = potential_derivs(s.state.sph, params)
    vs = s.sigma_int.vectors
    return np.array([[hess_v2aug(F, xp, s.state.lam, a, b, params, d) for b in vs] for a in vs])


def restricted_hessian(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """(d^2 V^lambda_{xi_perp} + corr_{xi_perp}) restricted to Sigma_int."""
    H = sigma_hessian(family, e, params) + correction_matrix(family, e, params)
    return 0.5 * (H + H.T)


# --------------------------------------------------------------------------
# Closed forms

_S1 = ClosedForm([([0, 54, 0, -90, 0, 36], ()),
                  ([-54, 0, 72, 0, -16], ("sqrt1m", "asin"))], 5)
_S2 = ClosedForm([([0, 3, 0, 1, 0, -4], ()),
                  ([-3, 0, -2, 0, 4], ("sqrt1m", "asin"))], 5)
_UX = ClosedForm([([0, -27, 0, 27], ()), ([27, 0, -36, 0, 17], ("atanh",))], 5)
_UY = ClosedForm([([0, -27, 0, 27], ()), ([27, 0, -36, 0, 9], ("atanh",))], 5)
_UZ = ClosedForm([([0, -6, 0, 8], ()), ([6, 0, -10, 0, 4], ("atanh",))], 5)
_TRU = ClosedForm([([0, -33, 0, 35], ()), ([33, 0, -46, 0, 21], ("atanh",))], 5)
_DETU = ClosedForm([([0, 0, -567, 0, 1080, 0, -513], ()),
                    ([0, 1134, 0, -2538, 0, 1662, 0, -242], ("atanh",)),
                    ([-567, 0, 1458, 0, -1212, 0, 334, 0, -13], ("atanh", "atanh"))], 10)


def s1_closed(e: float, params: PhysicalParams = _DEFAULT) -> float:
    return params.R * _S1(check_ecc(e))


def s2_closed(e: float, params: PhysicalParams = _DEFAULT) -> float:
    return params.R * _S2(check_ecc(e))


def s_from_derivs(e: float, params: PhysicalParams = _DEFAULT) -> tuple[float, float]:
    """(S1, S2) written through V1, V2, V11, V12, V22."""
    d = potential_derivs(Spheroid.oblate(check_ecc(e)), params)
    w = 1 - e * e
    e4 = e ** 4
    s1 = 8 / w * ((3 - 4 * e * e + e4) * d.V1 + 3 * w ** (2 / 3) * d.V2
                  + 2 * e4 * w ** (2 / 3) * d.V11 + 4 * e4 * w ** (1 / 3) * d.V12
                  + 2 * e4 * d.V22)
    s2 = 4 / w * ((2 - 3 * e * e + e4) * d.V1 + (2 - 3 * e * e) * w ** (2 / 3) * d.V2)
    return s1, s2


def phi_closed(e: float, params: PhysicalParams = _DEFAULT) -> float:
    d = potential_derivs(Spheroid.prolate(check_ecc(e)), params)
    w = 1 - e * e
    return 2 / w ** (2 / 3) * (w ** (2 / 3) * (3 + e * e) * d.V1
                               + (3 + 2 * e * e - e ** 4) * d.V2)


def u_closed(e: float, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    check_ecc(e)
    x, y, z = _UX(e), _UY(e), _UZ(e)
    return params.R * np.array([[x, y], [y, z]])


def tr_u_closed(e: float, params: PhysicalParams = _DEFAULT) -> float:
    return params.R * _TRU(check_ecc(e))


def det_u_closed(e: float, params: PhysicalParams = _DEFAULT) -> float:
    return params.R ** 2 * _DETU(check_ecc(e))


def kappa(e: float) -> float:
    return -(e - 1) * (e + 2) / ((e - 2) * math.sqrt(1 - e * e))


def sigma_epsilon(e: float) -> float:
    """gamma^(3) / a3 on the transversal internal variations."""
    return -e / (_SQ2 * (1 - e * e) ** (1 / 6))


def arnold_closed(family, e: float, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    family = _fam(family)
    T = params.T
    if family is Family.SPHERICAL:
        return np.zeros((0, 0))
    state = build(family, e, params)
    r2 = state.rate ** 2
    w = 1 - e * e
    if family is Family.MACLAURIN:
        a1 = (8 - e ** 4 - 4 * e * e) * T * r2 / (e ** 4 * w ** (1 / 3))
        a2 = 8 * w ** (1 / 6) * T * r2 / e ** 4
        blk = np.array([[a1, -a2], [-a2, a1]])
        out = np.zeros((4, 4))
        out[:2, :2] = blk
        out[2:, 2:] = blk
        return out
    if family is Family.TRANSVERSAL_MINUS:
        e = -e     # the minus branch is the plus branch at -e
    return np.diag([3 * e ** 4 * (2 + e) * T * r2 / (2 * (2 - e) * w ** (5 / 3)),
                    4 * (1 + e) * (2 - e) * (2 + e) * T * r2 / (e * e * w ** (2 / 3))])


def correction_closed(family, e: float, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    family = _fam(family)
    T = params.T
    if family is Family.SPHERICAL:
        return np.zeros((5, 5))
    r2 = build(family, e, params).rate ** 2
    if family is Family.MACLAURIN:
        return np.diag([8 * T * r2, 0.0, 0.0])
    if family is Family.TRANSVERSAL_MINUS:
        e = -e
    k = 8 * T * r2 / (e - 1)
    return k * np.array([[(9 - 5 * e * e) / (e * e - 1), -3.0, 0.0],
                         [-3.0, -1.0, 0.0],
                         [0.0, 0.0, 0.0]])


def restricted_hessian_closed(family, e: float = 0.0,
                              params: PhysicalParams = _DEFAULT) -> np.ndarray:
    family = _fam(family)
    if family is Family.SPHERICAL:
        d = potential_derivs(Spheroid.sphere(), params)
        m = 2 * np.eye(5)
        m[0, 1] = m[1, 0] = 1.0
        return 4 * (d.V1 + d.V2) * m
    if family is Family.MACLAURIN:
        s2 = s2_closed(e, params)
        return np.diag([s1_closed(e, params), s2, s2])
    out = np.zeros((3, 3))
    out[:2, :2] = u_closed(e, params)
    out[2, 2] = phi_closed(e, params)
    return out


# --------------------------------------------------------------------------
# Critical eccentricity and linearized dynamics


@dataclass(frozen=True)
class E0Result:
    e0: float
    axis_ratio: float
    lo: float
    hi: float
    iterations: int

    @property
    def width(self) -> float:
        return self.hi - self.lo


def find_e0(params: PhysicalParams = _DEFAULT, tol: float = 1e-15,
            bracket: tuple = (0.9, 0.99)) -> E0Result:
    """Root of S2 in (0.9, 0.99): MacLaurin spheroids lose stability there."""
    res = numerics.find_root(lambda x: _S2(x), bracket[0], bracket[1], tol=tol,
                             full_output=True)
    return E0Result(res.root, math.sqrt(1 - res.root ** 2), res.lo, res.hi, res.iterations)


def metric_gram(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """Kinetic metric T tr(A^T B) on the Sigma_int basis."""
    vs = _setup(_fam(family), float(e), params).sigma_int.vectors
    return params.T * np.array([[float(np.sum(a * b)) for b in vs] for a in vs])


def linearized_field(e: float, params: PhysicalParams = _DEFAULT) -> np.ndarray:
    """10x10 linearized Hamiltonian field of a MacLaurin spheroid.

    Basis (t1..t4, s1..s3, s1*..s3*): blockdiag(Xi^{-1} Ar, [[0, -R1^{-1}], [R2, 0]]).
    The Coriolis and Psi blocks vanish for this family.
    """
    fam = Family.MACLAURIN
    Ar = arnold_form(fam, e, params)
    Xi = xi_form(fam, e, params)
    R1 = metric_gram(fam, e, params)
    R2 = restricted_hessian(fam, e, params)
    L = np.zeros((10, 10))
    L[:4, :4] = np.linalg.solve(Xi, Ar)
    L[4:7, 7:] = -np.linalg.inv(R1)
    L[7:, 4:7] = R2
    return L


def _csqrt(x: float) -> complex:
    return complex(0.0, math.sqrt(x)) if x >= 0 else complex(math.sqrt(-x), 0.0)


@dataclass(frozen=True)
class EigenCheck:
    label: str
    value: complex
    multiplicity: int
    residual: float       # |det(block - eps I)| / ||block||^n

    @property
    def ok(self) -> bool:
        return self.residual <= 1e-8


def linearized_eigenvalues(e: float, params: PhysicalParams = _DEFAULT,
                           check: bool = True) -> list[EigenCheck]:
    """Closed-form spectrum of the MacLaurin linearized field, each value
    verified by a complex determinant on its diagonal block.

    eps1 = +/- i sqrt(8 + e^2) Omega / (2e) (x2), eps2 = +/- i sqrt(S1 / ((6 - 4e^2) T)),
    eps3 = +/- i sqrt(S2 / (2T)) (x2); eps3 is real once S2 < 0.
    """
    e = check_ecc(e)
    T = params.T
    omega = build(Family.MACLAURIN, e, params).rate
    R2 = restricted_hessian(Family.MACLAURIN, e, params)
    s1, s2 = R2[0, 0], R2[1, 1]
    eps1 = complex(0.0, math.sqrt(8 + e * e) * omega / (2 * e))
    eps2 = _csqrt(s1 / ((6 - 4 * e * e) * T))
    eps3 = _csqrt(s2 / (2 * T))
    L = linearized_field(e, params) if check else None
    out = []
    for label, val, mult, blk in (("eps1", eps1, 2, slice(0, 4)),
                                  ("eps2", eps2, 1, slice(4, 10)),
                                  ("eps3", eps3, 2, slice(4, 10))):
        for sgn in (1, -1):
            v = sgn * val
            resid = 0.0
            if check:
                resid = det_residual(L[blk, blk], v)
            out.append(EigenCheck(f"{label}{'+' if sgn > 0 else '-'}", v, mult, resid))
    return out


def det_residual(block, eps: complex) -> float:
    """|det(block - eps I)| / max(||block||, |eps|)^n."""
    block = np.asarray(block)
    n = block.shape[0]
    scale = max(float(np.max(np.abs(block))), abs(eps), 1e-300)
    return abs(numerics.complex_det(block - eps * np.eye(n))) / scale ** n


# --------------------------------------------------------------------------
# Report


def is_positive_definite(eigs) -> bool:
    eigs = list(eigs)
    if not eigs:
        return True
    return min(eigs) > 1e-10 * max(1.0, max(abs(x) for x in eigs))


def _margin(eigs) -> float | None:
    eigs = list(eigs)
    if not eigs:
        return None
    return min(eigs) / max(1.0, max(abs(x) for x in eigs))


@dataclass
class StabilityReport:
    family: Family
    e: float
    params: PhysicalParams
    verdict: Verdict
    arnold: np.ndarray
    arnold_eigenvalues: list
    hessian_restricted: np.ndarray
    hessian_eigenvalues: list
    correction_included: bool = True
    s1: float | None = None
    s2: float | None = None
    phi: float | None = None
    U: np.ndarray | None = None
    trU: float | None = None
    detU: float | None = None
    eigenvalues_Lh: list | None = None
    hessian_margin: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        R = self.params.R

        def scaled(x, k=1):
            return None if x is None else x / R ** k

        lh = None
        if self.eigenvalues_Lh is not None:
            lh = [{"re": c.value.real, "im": c.value.imag, "label": c.label,
                   "multiplicity": c.multiplicity} for c in self.eigenvalues_Lh]
        return {
            "family": self.family.value,
            "e": self.e,
            "verdict": self.verdict.value,
            "rho": self.params.rho,
            "grav": self.params.grav,
            "s1": self.s1,
            "s2": self.s2,
            "phi": self.phi,
            "trU": self.trU,
            "detU": self.detU,
            "arnold_eigenvalues": list(self.arnold_eigenvalues),
            "hessian_eigenvalues": list(self.hessian_eigenvalues),
            "lh_eigenvalues": lh,
            "hessian_margin": self.hessian_margin,
            "correction_included": self.correction_included,
            "r_units": {
                "s1": scaled(self.s1),
                "s2": scaled(self.s2),
                "phi": scaled(self.phi),
                "trU": scaled(self.trU),
                "detU": scaled(self.detU, 2),
                "arnold_eigenvalues": [x / R for x in self.arnold_eigenvalues],
                "hessian_eigenvalues": [x / R for x in self.hessian_eigenvalues],
            },
        }


def stability_report(family, e: float = 0.0, params: PhysicalParams = _DEFAULT) -> StabilityReport:
    family = _fam(family)
    e = _check_family_e(family, e)
    Ar = arnold_form(family, e, params)
    a_eigs = numerics.sym_eigenvalues(0.5 * (Ar + Ar.T)) if Ar.size else []
    H = restricted_hessian(family, e, params)
    h_eigs = numerics.sym_eigenvalues(H)
    report = StabilityReport(family, e, params, Verdict.INCONCLUSIVE, Ar, a_eigs, H, h_eigs,
                             hessian_margin=_margin(h_eigs))
    if family is Family.MACLAURIN:
        report.s1, report.s2 = float(H[0, 0]), float(H[1, 1])
        report.eigenvalues_Lh = linearized_eigenvalues(e, params)
    elif family.is_transversal:
        U = H[:2, :2]
        report.U = U
        report.phi = float(H[2, 2])
        report.trU = float(np.trace(U))
        report.detU = float(U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0])
    if is_positive_definite(a_eigs) and is_positive_definite(h_eigs):
        report.verdict = Verdict.STABLE
    elif report.eigenvalues_Lh is not None:
        tol = 1e-10 * max(1.0, max(abs(c.value) for c in report.eigenvalues_Lh))
        if any(abs(c.value.real) > tol for c in report.eigenvalues_Lh):
            report.verdict = Verdict.UNSTABLE
    return report
