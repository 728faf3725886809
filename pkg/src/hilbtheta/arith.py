"""Elementary number theory: divisors, Euler phi, Moebius, Ramanujan sums and
cyclotomic polynomials.  Everything is exact integer arithmetic."""

from functools import lru_cache
from math import gcd

__all__ = [
    "divisors",
    "euler_phi",
    "mobius",
    "ramanujan_sum",
    "cyclotomic_poly",
    "poly_rem",
]


def _check_positive(m):
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"expected a positive integer, got {m!r}")


@lru_cache(maxsize=None)
def _factor(m):
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(m):
    """Sorted list of the positive divisors of ``m``."""
    _check_positive(m)
    divs = [1]
    for p, e in _factor(m):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(m):
    _check_positive(m)
    out = m
    for p, _ in _factor(m):
        out = out // p * (p - 1)
    return out


def mobius(m):
    _check_positive(m)
    fac = _factor(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def ramanujan_sum(m, r):
    """Sum of the r-th powers of the primitive m-th roots of unity.

    Computed as ``sum_{d | gcd(r, m)} d * mu(m / d)``; ``r`` may be any integer.
    """
    _check_positive(m)
    g = gcd(r, m)
    return sum(d * mobius(m // d) for d in divisors(g))


def poly_rem(num, den):
    """Remainder of integer polynomial division, coefficients low degree first.

    ``den`` must be monic.  Trailing zeros are stripped from the result.
    """
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    for top in range(len(rem) - 1, dd - 1, -1):
        c = rem[top]
        if c:
            for i, b in enumerate(den):
                rem[top - dd + i] -= c * b
    rem = rem[:dd] if dd > 0 else []
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def _poly_divexact(num, den):
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[k + dd]
        quot[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients (low degree first) of the m-th cyclotomic polynomial.

    Obtained by dividing x^m - 1 by Phi_d for every proper divisor d of m.
    """
    _check_positive(m)
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)
