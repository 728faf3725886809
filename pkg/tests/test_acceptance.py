"""Exit criteria.  Every comparison is exact; each criterion also carries a
wall-clock budget.  A summary line per criterion is printed at the end of
the pytest run."""

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import brute_partition_count
from hilbtheta import cli
from hilbtheta.hilb import (SurfaceSpec, hilb_series_A, k_independence_check, quot_series_A,
                            surface_hilb_series, theta_from_hilb)
from hilbtheta.lattice import (TABLE1, base_change_form, combination_series, decompose_theta,
                               theta_form, theta_n, theta_n_balanced, verify_table1)
from hilbtheta.qspecial import double_product, eta_power, jacobi_triple_check
from hilbtheta.young import (appendix_index, enumerate_tuples, ideal_oracle, monomial_ideals,
                             partitions, quot_count)
from test_young import EXAMPLE_J0, EXAMPLE_J1


def _clear_caches():
    double_product.cache_clear()
    partitions.cache_clear()
    monomial_ideals.cache_clear()


@contextmanager
def criterion(log, number, title, budget):
    _clear_caches()
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < budget
        status = "PASS" if ok and in_time else "FAIL"
        log.append(f"[{status}] criterion {number:2d}: {title} ({elapsed:.2f}s, budget {budget}s)")
        print(log[-1])
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s > {budget}s"


def test_c01_hilb_a1(acceptance_log):
    with criterion(acceptance_log, 1, "Hilb(A_1) to q^5 = 1,1,3,5,9,14", 1):
        assert list(hilb_series_A(1, 5).coeffs) == [1, 1, 3, 5, 9, 14]


def test_c02_quot_a1(acceptance_log):
    with criterion(acceptance_log, 2, "Quot(O_{A_1}(-D)) to q^5 = 1,2,3,6,10,16", 1):
        # O(-D) = O(D) on A_1, i.e. sheaf index j = 1 in the product formula
        assert list(quot_series_A(2, 1, 0, 5).coeffs) == [1, 2, 3, 6, 10, 16]


def test_c03_young_oracle(acceptance_log, capsys):
    with criterion(acceptance_log, 3, "Young-tuple oracle: 14 and 16 tuples, listings match", 1):
        assert quot_count(2, 0, 5) == 14
        assert quot_count(2, 1, 5) == 16
        for j, expected in ((0, EXAMPLE_J0), (1, EXAMPLE_J1)):
            code = cli.main(["oracle", "--type", "A1", "--j", str(j), "--m", "5", "--list"])
            lines = [l for l in capsys.readouterr().out.splitlines() if not l.startswith("#")]
            assert code == 0 and int(lines[0]) == len(expected)
            listed = {tuple(tuple(int(x) for x in part.strip("[]").split(",") if x)
                            for part in line.split()) for line in lines[1:]}
            assert len(lines) - 1 == len(expected) and listed == expected
        assert {tuple(d.rows for d in t.diagrams) for t in enumerate_tuples(2, 0, 5)} == EXAMPLE_J0


def test_c04_cross_validation(acceptance_log):
    with criterion(acceptance_log, 4, "oracle = ideal oracle = product, n<=4, j<n, m<=6", 30):
        for n in range(1, 5):
            for j in range(n):
                series = quot_series_A(n, j, 0, 6)
                for m in range(7):
                    assert series[m] == quot_count(n, j, m) == \
                        ideal_oracle(n, appendix_index(n, j), m), (n, j, m)


def test_c05_table1(acceptance_log):
    with criterion(acceptance_log, 5, "Theta_n = tabulated combination to q^36, n=1..4", 60):
        for n in range(1, 5):
            rep = verify_table1(n, 36)
            assert rep.passed, rep.discrepancy


def test_c06_form_a(acceptance_log):
    with criterion(acceptance_log, 6, "prod(1-q^m)^{n+1} Hilb(A_n) = Theta_n to q^20, n<=4", 30):
        for n in range(1, 5):
            assert theta_from_hilb(n, 20) == theta_n(n, 20)


def test_c07_jacobi(acceptance_log):
    with criterion(acceptance_log, 7, "Jacobi triple product to q^30, |t-degree|<=30", 10):
        rep = jacobi_triple_check(30, 30)
        assert rep.passed, rep.discrepancy


def test_c08_decomposition(acceptance_log):
    with criterion(acceptance_log, 8, "decomposition sums to Theta_n to q^36, n=1..4", 60):
        for n in range(1, 5):
            form, m = base_change_form(n)
            terms = decompose_theta(form, m, 36)
            assert combination_series(terms, 36) == theta_n(n, 36)
            if n == 1:
                got = {(t.coefficient, t.form.coeffs()[(1, 1)]) for t in terms}
                assert got == {(Fraction(-1, 2), 1), (Fraction(3, 2), 9)}


def test_c09_k_independence(acceptance_log):
    with criterion(acceptance_log, 9, "k-independence, |k|<=2, n<=4, j<n, to q^12", 30):
        for n in range(1, 5):
            for j in range(n):
                rep = k_independence_check(n, j, 2, 12)
                assert rep.passed, rep.discrepancy


def test_c10_goettsche(acceptance_log):
    with criterion(acceptance_log, 10, "no singularities gives eta^{-chi}, chi=-20..24, to q^20", 10):
        for chi in range(-20, 25):
            res = surface_hilb_series(SurfaceSpec((), chi_resolution=chi), 20, normalized=False)
            assert res.series == eta_power(-chi, 20)
        one = surface_hilb_series(SurfaceSpec((), chi_resolution=1), 20).series
        assert list(one.coeffs) == [brute_partition_count(m) for m in range(21)]


def test_c11_properties(acceptance_log):
    with criterion(acceptance_log, 11, "property suite (integrality, positivity, balanced form)", 60):
        for n_sing in range(0, 4):
            s = hilb_series_A(n_sing, 20)
            assert all(isinstance(c, int) and c >= 0 for c in s.coeffs)
        for n in range(1, 5):
            for j in range(n):
                s = quot_series_A(n, j, 0, 20)
                assert all(isinstance(c, int) and c >= 0 for c in s.coeffs)
        forms = [f for n in TABLE1 for _, f in TABLE1[n]]
        for n in range(1, 5):
            form, m = base_change_form(n)
            forms += [t.form for t in decompose_theta(form, m, 12)]
        for f in forms:
            s = theta_form(f, 20)
            assert s[0] == 1 and all(isinstance(c, int) and c >= 0 for c in s.coeffs)
        for n in range(1, 5):
            t = theta_n(n, 36)
            assert t.is_integral()
            assert theta_n_balanced(n, 36) == t
