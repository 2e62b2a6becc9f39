"""Cancellation-free evaluation of closed forms in the eccentricity.

A closed form here is ``scale * sum_i poly_i(e) * factor_i(e) / e**shift`` where
each factor is a product of ``asin``, ``atanh``, ``sqrt1m`` (sqrt(1-e^2)) and
``inv1m`` (1/(1-e^2)).  For small ``e`` the leading Taylor terms of the sum
cancel against ``e**shift``; evaluating it directly then loses most digits.
The same data is therefore also expanded as an exact rational power series
(the cancelling orders vanish identically) and summed when the direct form is
ill-conditioned.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

ORDER = 240          # highest power of e kept in the series
COND_LIMIT = 1e3     # switch to the series above this cancellation factor
E_SERIES_MAX = 0.8   # beyond this the series converges too slowly to be used


def _asin(n):
    out = [Fraction(0)] * (n + 1)
    for k in range((n - 1) // 2 + 1):
        out[2 * k + 1] = Fraction(math.comb(2 * k, k), 4 ** k * (2 * k + 1))
    return out


def _atanh(n):
    out = [Fraction(0)] * (n + 1)
    for k in range((n - 1) // 2 + 1):
        out[2 * k + 1] = Fraction(1, 2 * k + 1)
    return out


def _sqrt1m(n):
    # sqrt(1 - e^2) = sum binom(1/2, k) (-e^2)^k
    out = [Fraction(0)] * (n + 1)
    coef = Fraction(1)
    for k in range(n // 2 + 1):
        out[2 * k] = coef * (-1) ** k
        coef = coef * (Fraction(1, 2) - k) / (k + 1)
    return out


def _inv1m(n):
    out = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        out[2 * k] = Fraction(1)
    return out


_SERIES = {"asin": _asin, "atanh": _atanh, "sqrt1m": _sqrt1m, "inv1m": _inv1m}

_FUNCS = {
    "asin": math.asin,
    "atanh": math.atanh,
    "sqrt1m": lambda e: math.sqrt(1.0 - e * e),
    "inv1m": lambda e: 1.0 / (1.0 - e * e),
}


def _mul(p, q, n):
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(p[:n + 1]):
        if a == 0:
            continue
        for j, b in enumerate(q[:n + 1 - i]):
            if b:
                out[i + j] += a * b
    return out


class ClosedForm:
    """``scale * sum(poly * factors) / e**shift``; see the module docstring."""

    def __init__(self, terms, shift: int, scale=1):
        # terms: iterable of (coefficients ascending in e, tuple of factor names)
        self.terms = tuple((tuple(int(c) for c in poly), tuple(factors)) for poly, factors in terms)
        self.shift = int(shift)
        self.scale = Fraction(scale)

    def direct(self, e: float) -> tuple[float, float]:
        """Direct evaluation and its cancellation factor sum|t_i| / |sum t_i|."""
        total = 0.0
        mag = 0.0
        for poly, factors in self.terms:
            fac = 1.0
            for name in factors:
                fac *= _FUNCS[name](e)
            for j, c in enumerate(poly):
                if c:
                    t = c * e ** j * fac
                    total += t
                    mag += abs(t)
        value = float(self.scale) * total / e ** self.shift
        cond = mag / abs(total) if total != 0 else math.inf
        return value, cond

    @property
    def coefficients(self) -> tuple[float, ...]:
        return _coefficients(self)

    def series(self, e: float) -> float:
        coeffs = self.coefficients
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * e + c
        return acc

    def __call__(self, e: float) -> float:
        e = float(e)
        if e == 0.0:
            return self.coefficients[0]
        if abs(e) < E_SERIES_MAX:
            value, cond = self.direct(e)
            if cond <= COND_LIMIT:
                return value
            return self.series(e)
        return self.direct(e)[0]

    # hashing by identity keeps lru_cache per instance
    __hash__ = object.__hash__


@lru_cache(maxsize=None)
def _coefficients(form: ClosedForm) -> tuple[float, ...]:
    n = ORDER + form.shift
    total = [Fraction(0)] * (n + 1)
    for poly, factors in form.terms:
        s = [Fraction(0)] * (n + 1)
        for j, c in enumerate(poly):
            s[j] = Fraction(c)
        for name in factors:
            s = _mul(s, _SERIES[name](n), n)
        total = [x + y for x, y in zip(total, s)]
    if any(total[:form.shift]):
        raise ArithmeticError("closed form is singular at e = 0")
    return tuple(float(form.scale * c) for c in total[form.shift:])


def polymul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out
