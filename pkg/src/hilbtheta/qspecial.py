"""Named q-series: eta powers, the polynomials f_n, the two-variable double
product generating Quot scheme Euler characteristics, and a checker for the
Jacobi triple product identity."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .series import QSeries, TLaurentSeries, tl_mul

__all__ = [
    "euler_product",
    "eta_power",
    "fn_poly",
    "double_product",
    "triple_product_side",
    "triple_product_theta_side",
    "jacobi_triple_check",
    "IdentityReport",
]


def euler_product(e, M):
    """``prod_{m>=1} (1 - q^m)^e`` truncated at q^M, offset 0."""
    if M < 0:
        raise ValueError("M must be non-negative")
    base = [0] * (M + 1)
    base[0] = 1
    for m in range(1, M + 1):
        # multiply in place by (1 - q^m)
        for i in range(M, m - 1, -1):
            base[i] -= base[i - m]
    s = QSeries.from_coeffs(base, M)
    return s**e


def eta_power(e, M):
    """``eta(q)^e = q^{e/24} prod (1 - q^m)^e`` to order M."""
    return euler_product(e, M).with_offset(Fraction(e, 24))


def fn_poly(n):
    """Coefficient list of ``f_n(x) = 1 + x + ... + x^n``."""
    if n < 1:
        raise ValueError(f"f_n needs n >= 1, got {n}")
    return [1] * (n + 1)


def _factor(poly, M, E, m, sign):
    # poly(q^m t^sign) as a TLaurentSeries
    return TLaurentSeries.from_monomials(
        M, E, {(sign * i, m * i): c for i, c in enumerate(poly) if c})


def _product(poly, M, E):
    # m = 0 factor first, then interleave t and t^{-1} factors by ascending m
    result = _factor(poly, M, E, 0, -1)
    for m in range(1, M + 1):
        result = tl_mul(result, _factor(poly, M, E, m, 1), E)
        result = tl_mul(result, _factor(poly, M, E, m, -1), E)
    return result


@lru_cache(maxsize=64)
def double_product(n, M, E=None):
    """``prod_{m>0} f_n(q^m t) * prod_{m>=0} f_n(q^m t^{-1})``.

    Coefficients of t^d are exact up to q^M for every |d| <= E.  ``E``
    defaults to ``M + n``, which covers every degree that can carry a
    q-power at most M.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if M < 0:
        raise ValueError("M must be non-negative")
    if E is None:
        E = M + n
    if E < 0:
        raise ValueError("E must be non-negative")
    return _product(fn_poly(n), M, E)


def triple_product_side(M, E):
    """``prod_{m>=1}(1-q^m) * prod_{m>0}(1-q^m t) * prod_{m>=0}(1-q^m t^{-1})``."""
    prod = _product([1, -1], M, E)
    eul = euler_product(1, M)
    return TLaurentSeries(M, E, {d: s * eul for d, s in prod.terms.items()})


def triple_product_theta_side(M, E):
    """``sum_k q^{k(k+1)/2} (-t)^k`` restricted to |k| <= E, q-powers <= M."""
    kmax = (isqrt(1 + 8 * M) - 1) // 2 + 1
    monos = {}
    for k in range(-kmax - 1, kmax + 2):
        a = k * (k + 1) // 2
        if abs(k) <= E and a <= M:
            monos[(k, a)] = -1 if k % 2 else 1
    return TLaurentSeries.from_monomials(M, E, monos)


@dataclass
class IdentityReport:
    """Outcome of an identity check.  ``discrepancy`` locates the first
    mismatch as ``{"t_degree": d, "q_power": a, "left": x, "right": y}``."""

    name: str
    passed: bool
    discrepancy: dict = None
    details: dict = None

    def __bool__(self):
        return self.passed


def compare_tl(a, b, window):
    for d in range(-window, window + 1):
        ca, cb = a.coeff(d), b.coeff(d)
        for i in range(min(ca.order, cb.order) + 1):
            if ca[i] != cb[i]:
                return {"t_degree": d, "q_power": i, "left": ca[i], "right": cb[i]}
    return None


def jacobi_triple_check(M, E):
    """Check the Jacobi triple product as a two-variable series."""
    lhs = triple_product_theta_side(M, E)
    rhs = triple_product_side(M, E)
    bad = compare_tl(lhs, rhs, E)
    return IdentityReport("jacobi", bad is None, bad, {"order": M, "t_window": E})
