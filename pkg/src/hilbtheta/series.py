"""Exact truncated q-series, Laurent polynomials in t with q-series
coefficients, and elements of cyclotomic group rings.

Coefficients are exact rationals.  Integral values are kept as plain ``int``
and everything else as :class:`fractions.Fraction`, so ``1 == Fraction(1)``
comparisons behave as expected.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import cyclotomic_poly, euler_phi, poly_rem, ramanujan_sum

__all__ = [
    "QSeries",
    "TLaurentSeries",
    "CycElem",
    "NotRationalError",
    "qs_add",
    "qs_mul",
    "qs_inv",
    "tl_mul",
    "cyc_rationalize",
    "exact",
    "format_rational",
    "parse_rational",
]


class NotRationalError(ValueError):
    """A cyclotomic element expected to be rational is not."""


def exact(x):
    """Normalise a number to ``int`` when integral, else ``Fraction``."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    return exact(Fraction(str(s)))


def _mul_lists(a, b, order):
    out = [0] * (order + 1)
    nzb = [(j, c) for j, c in enumerate(b[: order + 1]) if c]
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        lim = order - i
        for j, y in nzb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class QSeries:
    """Truncated series ``q^offset * sum_{i<=order} coeffs[i] q^i``."""

    order: int
    offset: Fraction
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        off = Fraction(self.offset)
        if (24 * off).denominator != 1:
            raise ValueError(f"offset {off} does not have denominator dividing 24")
        cs = tuple(exact(c) for c in self.coeffs)
        if len(cs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "coeffs", cs)

    # constructors
    @classmethod
    def from_coeffs(cls, coeffs, order=None, offset=0):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        return cls(order, Fraction(offset), tuple(coeffs))

    @classmethod
    def zero(cls, order, offset=0):
        return cls(order, Fraction(offset), (0,) * (order + 1))

    @classmethod
    def one(cls, order):
        return cls.monomial(order, 0)

    @classmethod
    def monomial(cls, order, power, coeff=1):
        cs = [0] * (order + 1)
        if 0 <= power <= order:
            cs[power] = coeff
        return cls(order, Fraction(0), tuple(cs))

    # queries
    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return QSeries(order, self.offset, self.coeffs[: order + 1])

    def shift_offset(self, delta):
        return QSeries(self.order, self.offset + Fraction(delta), self.coeffs)

    def with_offset(self, offset):
        return QSeries(self.order, Fraction(offset), self.coeffs)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, QSeries):
            return qs_add(self, other)
        return self + QSeries.monomial(self.order, 0, other).with_offset(self.offset)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.order, self.offset, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        return QSeries(self.order, self.offset, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return qs_inv(self) ** (-e)
        result = QSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        return f"QSeries(order={self.order}, offset={self.offset}, coeffs={list(self.coeffs)})"

    # serialization
    def to_record(self):
        return {
            "offset_numerator": str(self.offset.numerator),
            "offset_denominator": str(self.offset.denominator),
            "order": str(self.order),
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_record(cls, rec):
        off = Fraction(int(rec["offset_numerator"]), int(rec["offset_denominator"]))
        return cls(int(rec["order"]), off, tuple(parse_rational(c) for c in rec["coeffs"]))


def qs_add(a, b):
    if a.offset != b.offset:
        raise ValueError(
            f"offset mismatch: {a.offset} vs {b.offset}; align offsets explicitly")
    order = min(a.order, b.order)
    return QSeries(order, a.offset,
                   tuple(a.coeffs[i] + b.coeffs[i] for i in range(order + 1)))


def qs_mul(a, b):
    order = min(a.order, b.order)
    return QSeries(order, a.offset + b.offset, tuple(_mul_lists(a.coeffs, b.coeffs, order)))


def qs_inv(a):
    c0 = a.coeffs[0]
    if not c0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = Fraction(1) / c0
    out = [exact(inv0)]
    ac = a.coeffs
    for k in range(1, a.order + 1):
        s = 0
        for i in range(1, k + 1):
            if ac[i]:
                s += ac[i] * out[k - i]
        out.append(exact(-s * inv0))
    return QSeries(a.order, -a.offset, tuple(out))


@dataclass(frozen=True)
class TLaurentSeries:
    """Finite Laurent polynomial in t whose coefficients are offset-0 QSeries.

    ``terms`` maps t-degree to coefficient lists; stored QSeries all share
    ``q_order``.  ``t_window`` is the degree range that is guaranteed exact
    after pruning.
    """

    q_order: int
    t_window: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.t_window < 0:
            raise ValueError("t_window must be non-negative")
        for d, s in self.terms.items():
            if s.order != self.q_order or s.offset != 0:
                raise ValueError(f"bad coefficient at t^{d}")

    @classmethod
    def from_monomials(cls, q_order, t_window, monos):
        """Build from ``{(t_degree, q_power): coeff}``."""
        acc = {}
        for (d, a), c in monos.items():
            if 0 <= a <= q_order and c:
                acc.setdefault(d, [0] * (q_order + 1))[a] += c
        return cls._from_lists(q_order, t_window, acc)

    @classmethod
    def one(cls, q_order, t_window=0):
        return cls.from_monomials(q_order, t_window, {(0, 0): 1})

    @classmethod
    def _from_lists(cls, q_order, t_window, lists):
        terms = {}
        for d in sorted(lists):
            cs = lists[d]
            if any(cs):
                terms[d] = QSeries(q_order, Fraction(0), tuple(cs))
        return cls(q_order, t_window, terms)

    def coeff(self, d):
        s = self.terms.get(d)
        return s if s is not None else QSeries.zero(self.q_order)

    def degrees(self):
        return sorted(self.terms)

    def restrict(self, window):
        """Keep only degrees with |d| <= window (no further pruning)."""
        return TLaurentSeries(self.q_order, min(window, self.t_window),
                              {d: s for d, s in self.terms.items() if abs(d) <= window})

    def negate_t(self):
        """Substitute t -> -t."""
        return TLaurentSeries(self.q_order, self.t_window,
                              {d: (-s if d % 2 else s) for d, s in self.terms.items()})

    def __mul__(self, other):
        return tl_mul(self, other, min(self.t_window, other.t_window))

    def __eq__(self, other):
        if not isinstance(other, TLaurentSeries):
            return NotImplemented
        return self.q_order == other.q_order and self.terms == other.terms

    def __repr__(self):
        body = ", ".join(f"{d}: {list(s.coeffs)}" for d, s in sorted(self.terms.items()))
        return f"TLaurentSeries(q_order={self.q_order}, t_window={self.t_window}, {{{body}}})"


def _prune_limit(d, q_order, window):
    # largest q-power kept at t-degree d
    return q_order - max(0, abs(d) - window)


def tl_mul(a, b, target_window):
    """Product of two t-Laurent series followed by window pruning.

    A monomial ``t^d q^a`` is discarded when ``a + max(0, |d| - E) > M``.
    This is exact inside ``|d| <= E`` whenever every factor still to be
    multiplied in costs at least one power of q per unit of t-degree.
    """
    if a.q_order != b.q_order:
        raise ValueError("q_order mismatch")
    M = a.q_order
    acc = {}
    for da, sa in a.terms.items():
        for db, sb in b.terms.items():
            d = da + db
            lim = _prune_limit(d, M, target_window)
            if lim < 0:
                continue
            prod = _mul_lists(sa.coeffs, sb.coeffs, lim)
            cur = acc.get(d)
            if cur is None:
                cur = acc[d] = [0] * (M + 1)
            for i, c in enumerate(prod):
                if c:
                    cur[i] += c
    return TLaurentSeries._from_lists(M, target_window, acc)


@dataclass(frozen=True)
class CycElem:
    """Element ``sum_r residue_counts[r] * xi_m^r`` of Q(xi_m), xi_m = e^{2 pi i/m}."""

    modulus: int
    residue_counts: tuple

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        rc = tuple(exact(c) for c in self.residue_counts)
        if len(rc) != self.modulus:
            raise ValueError("residue_counts must have length modulus")
        object.__setattr__(self, "residue_counts", rc)

    @classmethod
    def zero(cls, m):
        return cls(m, (0,) * m)

    @classmethod
    def root_power(cls, m, r, coeff=1):
        rc = [0] * m
        rc[r % m] = coeff
        return cls(m, tuple(rc))

    def __add__(self, other):
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        return CycElem(self.modulus, tuple(
            x + y for x, y in zip(self.residue_counts, other.residue_counts)))

    def conjugate(self, s):
        """Image under the Galois automorphism xi -> xi^s."""
        m = self.modulus
        if gcd(s, m) != 1:
            raise ValueError(f"{s} is not a unit modulo {m}")
        rc = [0] * m
        for r, c in enumerate(self.residue_counts):
            rc[(r * s) % m] += c
        return CycElem(m, tuple(rc))

    def reduce(self):
        """Coefficients of the canonical representative modulo Phi_m
        (low degree first, trailing zeros stripped)."""
        m = self.modulus
        den = 1
        for c in self.residue_counts:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        num = [int(c * den) for c in self.residue_counts]
        rem = poly_rem(num, list(cyclotomic_poly(m)))
        return [exact(Fraction(c, den)) for c in rem]

    def galois_sum(self):
        """Trace to Q, computed with Ramanujan sums."""
        m = self.modulus
        return exact(sum(c * ramanujan_sum(m, r) for r, c in enumerate(self.residue_counts) if c))

    def to_record(self):
        return {"modulus": str(self.modulus),
                "residue_counts": [format_rational(c) for c in self.residue_counts]}


def cyc_rationalize(x):
    """Rational value of a Galois-invariant cyclotomic element.

    Raises :class:`NotRationalError` naming a conjugate that differs when the
    element is not rational.
    """
    m = x.modulus
    red = x.reduce()
    if len(red) > 1:
        for s in range(2, m):
            if gcd(s, m) == 1 and x.conjugate(s).reduce() != red:
                raise NotRationalError(
                    f"element of Q(xi_{m}) is not rational: conjugate xi -> xi^{s} differs")
        raise NotRationalError(f"element of Q(xi_{m}) is not rational")
    value = exact(Fraction(x.galois_sum()) / euler_phi(m))
    expected = red[0] if red else 0
    if value != expected:
        raise AssertionError(
            f"Ramanujan-sum value {value} disagrees with cyclotomic reduction {expected}")
    return value
