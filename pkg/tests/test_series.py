import json
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import expand_product
from hilbtheta.arith import euler_phi
from hilbtheta.series import (CycElem, NotRationalError, QSeries, TLaurentSeries,
                              cyc_rationalize, qs_add, qs_inv, qs_mul, tl_mul)

ORDER = 6
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def series(order=ORDER, unit=False):
    coeffs = st.lists(rationals, min_size=order + 1, max_size=order + 1)
    if unit:
        coeffs = coeffs.filter(lambda c: c[0] != 0)
    return coeffs.map(lambda c: QSeries.from_coeffs(c, order))


def test_add_cancels():
    a = QSeries.from_coeffs([1, 1, 0, 0])
    b = QSeries.from_coeffs([1, -1, 0, 0])
    assert (a + b).coeffs == (2, 0, 0, 0)


def test_add_identity_and_inverse():
    from hilbtheta.qspecial import eta_power
    s = eta_power(1, 8)
    assert s + QSeries.zero(8, s.offset) == s
    z = s + (-s)
    assert z.coeffs == (0,) * 9 and z.offset == Fraction(1, 24)


def test_add_rejects_offset_mismatch():
    a = QSeries.from_coeffs([1, 2], offset=Fraction(1, 24))
    with pytest.raises(ValueError, match="offset"):
        qs_add(a, QSeries.from_coeffs([1, 2]))


def test_offset_denominator_must_divide_24():
    with pytest.raises(ValueError):
        QSeries.from_coeffs([1], offset=Fraction(1, 5))


def test_length_invariant():
    with pytest.raises(ValueError):
        QSeries(3, Fraction(0), (1, 2))


def test_geometric_inverse():
    for M in (0, 1, 5, 20):
        one_minus_q = QSeries.from_coeffs([1, -1], M)
        geo = QSeries.from_coeffs([1] * (M + 1))
        assert qs_mul(one_minus_q, geo) == QSeries.one(M)
        assert qs_inv(one_minus_q) == geo


def test_inv_one():
    assert qs_inv(QSeries.one(4)) == QSeries.one(4)


def test_inv_rejects_zero_constant():
    with pytest.raises(ZeroDivisionError):
        qs_inv(QSeries.from_coeffs([0, 1]))


def test_inverse_of_euler_product_is_partitions():
    # oracle: finite product prod_{m<=5}(1 - q^m) expanded by hand-rolled polynomial code
    prod = expand_product([[1] + [0] * (m - 1) + [-1] for m in range(1, 6)], 5)
    assert qs_inv(QSeries.from_coeffs(prod, 5)).coeffs == (1, 1, 2, 3, 5, 7)


def test_square_inverse_counts_partition_pairs():
    # pairs of partitions of m, by enumeration: sum_{a+b=m} p(a) p(b)
    from conftest import brute_partition_count as p
    expected = [sum(p(a) * p(m - a) for a in range(m + 1)) for m in range(6)]
    assert expected == [1, 2, 5, 10, 20, 36]
    prod = expand_product([[1] + [0] * (m - 1) + [-1] for m in range(1, 6)] * 2, 5)
    assert list(qs_inv(QSeries.from_coeffs(prod, 5)).coeffs) == expected


def test_mul_takes_min_order_and_adds_offsets():
    a = QSeries.from_coeffs([1, 2, 3], offset=Fraction(1, 24))
    b = QSeries.from_coeffs([1, 1], offset=Fraction(-1, 12))
    c = qs_mul(a, b)
    assert c.order == 1 and c.offset == Fraction(-1, 24) and c.coeffs == (1, 3)


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@settings(max_examples=40, deadline=None)
@given(series(unit=True))
def test_mul_inverse_is_one(a):
    assert qs_mul(a, qs_inv(a)) == QSeries.one(ORDER)


def test_serialization_roundtrip():
    s = QSeries.from_coeffs([Fraction(1, 2), -3, 10**30], offset=Fraction(-7, 24))
    rec = json.loads(json.dumps(s.to_record()))
    assert all(isinstance(v, str) for v in rec["coeffs"])
    assert rec["offset_numerator"] == "-7" and rec["offset_denominator"] == "24"
    assert QSeries.from_record(rec) == s


# --- TLaurentSeries --------------------------------------------------------

def test_tl_identity():
    a = TLaurentSeries.from_monomials(5, 3, {(1, 1): 2, (-2, 0): 1, (0, 3): -1})
    assert tl_mul(a, TLaurentSeries.one(5, 3), 3) == a


def test_tl_t_times_inverse():
    t = TLaurentSeries.from_monomials(4, 2, {(1, 0): 1})
    tinv = TLaurentSeries.from_monomials(4, 2, {(-1, 0): 1})
    assert tl_mul(t, tinv, 2) == TLaurentSeries.one(4, 2)


def test_tl_direct_expansion():
    a = TLaurentSeries.from_monomials(4, 2, {(0, 0): 1, (1, 1): 1})
    b = TLaurentSeries.from_monomials(4, 2, {(0, 0): 1, (-1, 1): 1})
    expected = TLaurentSeries.from_monomials(4, 2, {(0, 0): 1, (1, 1): 1, (-1, 1): 1, (0, 2): 1})
    assert tl_mul(a, b, 2) == expected


@st.composite
def costly_factor(draw, M):
    # every monomial pays at least one power of q per unit of t-degree
    monos = {(0, 0): draw(st.integers(-2, 2))}
    for _ in range(draw(st.integers(1, 3))):
        d = draw(st.integers(-2, 2))
        a = draw(st.integers(abs(d), abs(d) + 2))
        monos[(d, a)] = monos.get((d, a), 0) + draw(st.integers(-3, 3))
    return monos


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pruning_matches_unpruned_reference(data):
    M = data.draw(st.integers(0, 6))
    E = data.draw(st.integers(0, 3))
    first = {(-i, 0): data.draw(st.integers(-2, 2)) for i in range(data.draw(st.integers(1, 3)))}
    factors = [first] + [data.draw(costly_factor(M)) for _ in range(data.draw(st.integers(1, 4)))]
    big = 100
    pruned = TLaurentSeries.from_monomials(M, E, factors[0])
    full = TLaurentSeries.from_monomials(M, big, factors[0])
    for f in factors[1:]:
        pruned = tl_mul(pruned, TLaurentSeries.from_monomials(M, E, f), E)
        full = tl_mul(full, TLaurentSeries.from_monomials(M, big, f), big)
    for d in range(-E, E + 1):
        assert pruned.coeff(d) == full.coeff(d)


def test_pruning_rule_drops_far_terms():
    # t^3 q^1 with window 1 and order 2: 1 + (3 - 1) = 3 > 2
    a = TLaurentSeries.from_monomials(2, 1, {(3, 1): 1, (2, 1): 1})
    b = tl_mul(a, TLaurentSeries.one(2, 1), 1)
    assert b.degrees() == [2]


# --- CycElem ---------------------------------------------------------------

@pytest.mark.parametrize("m, counts, value", [
    (3, (1, 0, 0), 1),
    (3, (0, 1, 1), -1),
    (4, (0, 1, 0, 1), 0),
    (1, (5,), 5),
    (6, (0, 1, 0, 0, 0, 1), 1),
])
def test_rationalize(m, counts, value):
    assert cyc_rationalize(CycElem(m, counts)) == value


def test_rationalize_rejects_with_conjugate():
    with pytest.raises(NotRationalError, match="xi\\^2"):
        cyc_rationalize(CycElem(3, (0, 1, 0)))


def test_reduction_idempotent():
    x = CycElem(5, (3, 1, 4, 1, 5))
    red = x.reduce()
    again = CycElem(5, tuple(red) + (0,) * (5 - len(red))).reduce()
    assert red == again


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.data())
def test_rationalize_agrees_with_reduction_on_galois_averages(m, data):
    counts = data.draw(st.lists(st.integers(-5, 5), min_size=m, max_size=m))
    x = CycElem(m, tuple(counts))
    avg = CycElem.zero(m)
    for s in range(1, m + 1):
        if gcd(s, m) == 1:
            avg = avg + x.conjugate(s)
    red = avg.reduce()
    assert len(red) <= 1
    assert cyc_rationalize(avg) == (red[0] if red else 0)
    assert cyc_rationalize(avg) == Fraction(avg.galois_sum(), euler_phi(m))
