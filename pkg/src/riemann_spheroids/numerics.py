"""Small numerical kernels: quadrature, root bracketing, Jacobi eigenvalues,
complex determinants and central finite differences.

Everything here works on plain floats and small numpy arrays; no routine keeps
state between calls.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergence, NoSignChange

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadratureSpec()

# 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])           # 15 nodes, ascending
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5]] = _WG[:3]
_GWEIGHTS[[13, 11, 9]] = _WG[:3]
_GWEIGHTS[7] = _WG[3]


def _kronrod(g, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    vals = g(mid + half * _NODES)
    k = half * float(_KWEIGHTS @ vals)
    gauss = half * float(_GWEIGHTS @ vals)
    return k, abs(k - gauss)


def integrate(f: Callable, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUAD,
              vectorized: bool = False) -> float:
    """Integrate ``f`` over ``(a, b)`` with adaptive Gauss-Kronrod bisection.

    ``b`` may be ``math.inf``.  The half line is mapped onto ``(0, 1)`` by
    ``s = a + t/(1 - t)``; internally the variable ``u = 1 - t`` is used so the
    point at infinity sits at ``u = 0`` where floating point is dense.

    If ``vectorized`` is true ``f`` is called with numpy arrays.
    """
    fv = f if vectorized else np.vectorize(f, otypes=[float])

    if math.isinf(b):
        if b < 0:
            raise ValueError("only +inf is supported as an infinite limit")

        def g(u):
            return fv(a + (1.0 - u) / u) / (u * u)

        lo, hi = 0.0, 1.0
    else:
        g = fv
        lo, hi = float(a), float(b)

    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0

    total, err = _kronrod(g, lo, hi)
    heap = [(-err, lo, hi, total)]
    total_err = err
    n_sub = 1
    stuck = 0.0
    while True:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err + stuck <= tol:
            return sign * total
        if not heap:
            break
        neg_err, l, h, val = heapq.heappop(heap)
        m = 0.5 * (l + h)
        if not (l < m < h) or (h - l) <= 64 * EPS * max(abs(l), abs(h), 1e-300):
            # interval cannot be split further in double precision
            stuck += -neg_err
            total_err += neg_err
            continue
        if n_sub >= spec.max_subdivisions:
            break
        v1, e1 = _kronrod(g, l, m)
        v2, e2 = _kronrod(g, m, h)
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, l, m, v1))
        heapq.heappush(heap, (-e2, m, h, v2))
        n_sub += 1
    raise NonConvergence(
        f"quadrature did not reach tolerance after {n_sub} subdivisions "
        f"(estimate {sign * total!r}, error {total_err + stuck:.3g})")


@dataclass(frozen=True)
class RootResult:
    root: float
    lo: float
    hi: float
    iterations: int

    @property
    def width(self) -> float:
        return self.hi - self.lo


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12,
              maxiter: int = 200, full_output: bool = False):
    """Bracketed root of ``f`` by Brent's bisection / secant / inverse quadratic hybrid.

    Iterates until the bracket enclosing the sign change is at most ``tol`` wide
    (or shrinks to adjacent floats).  With ``full_output`` a :class:`RootResult`
    carrying the final bracket is returned instead of the bare root.
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return RootResult(a, a, a, 0) if full_output else a
    if fb == 0.0:
        return RootResult(b, b, b, 0) if full_output else b
    if fa * fb > 0 or math.isnan(fa) or math.isnan(fb):
        raise NoSignChange(f"f({a})={fa} and f({b})={fb} do not bracket a root")

    c, fc = a, fa
    d = e = b - a
    for it in range(1, maxiter + 1):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        width = abs(c - b)
        tol1 = 2.0 * EPS * abs(b) + 0.25 * tol
        xm = 0.5 * (c - b)
        if fb == 0.0 or width <= tol or abs(xm) <= 2.0 * EPS * abs(b):
            res = RootResult(b, min(b, c), max(b, c), it)
            return res if full_output else b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        if abs(d) > tol1:
            b += d
        else:
            b += math.copysign(tol1, xm)
        fb = f(b)
    raise NonConvergence(f"root finder did not converge in {maxiter} iterations")


def sym_eigenvalues(m, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or not 1 <= n <= 10:
        raise ValueError("expected a square matrix of dimension 1..10")
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale > 0 and np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    if scale == 0:
        return [0.0] * n
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
    else:
        raise NonConvergence("Jacobi sweeps did not converge")
    return sorted(float(x) for x in np.diag(a))


def complex_det(m) -> complex:
    """Determinant by Gaussian elimination with partial pivoting in complex arithmetic."""
    a = np.array(m, dtype=complex, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("expected a square matrix")
    det = 1.0 + 0.0j
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0:
            return 0.0j
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        det *= a[k, k]
        if k + 1 < n:
            factors = a[k + 1:, k] / a[k, k]
            a[k + 1:, k:] -= np.outer(factors, a[k, k:])
    return complex(det)


def fd_derivative(f: Callable, x, order: int = 1, step: float | None = None):
    """Central finite-difference gradient (``order=1``) or Hessian (``order=2``).

    ``x`` may be any array shape; the gradient has the shape of ``x`` and the
    Hessian is ``(x.size, x.size)`` over the flattened coordinates.
    """
    x = np.asarray(x, dtype=float)
    shape = x.shape
    flat = x.ravel()
    n = flat.size

    def call(v):
        return float(f(v.reshape(shape)))

    if order == 1:
        h = 1e-6 if step is None else step
        grad = np.empty(n)
        for i in range(n):
            xp = flat.copy()
            xm = flat.copy()
            xp[i] += h
            xm[i] -= h
            grad[i] = (call(xp) - call(xm)) / (2 * h)
        return grad.reshape(shape)
    if order == 2:
        h = 1e-4 * max(1.0, float(np.max(np.abs(flat)))) if step is None else step
        f0 = call(flat)
        hess = np.empty((n, n))
        for i in range(n):
            xp = flat.copy()
            xm = flat.copy()
            xp[i] += h
            xm[i] -= h
            hess[i, i] = (call(xp) - 2 * f0 + call(xm)) / (h * h)
            for j in range(i):
                vals = []
                for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                    v = flat.copy()
                    v[i] += si * h
                    v[j] += sj * h
                    vals.append(call(v))
                hess[i, j] = hess[j, i] = (vals[0] - vals[1] - vals[2] + vals[3]) / (4 * h * h)
        return hess
    raise ValueError("order must be 1 or 2")
