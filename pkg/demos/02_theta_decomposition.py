"""
Theta_n as a combination of quadratic-form theta series
=======================================================

Theta_n is a lattice sum weighted by (n+2)-th roots of unity.  After a change
of basis the weight only depends on k_1, and Galois averaging rewrites the
sum as a rational combination of ordinary theta series.
"""

from hilbtheta import base_change_form, decompose_theta, theta_n, theta_n_balanced
from hilbtheta.lattice import combination_series, verify_table1

for n in range(1, 5):
    print(f"Theta_{n}:", list(theta_n(n, 16).coeffs))

# the same series from the zero-sum form over Z^{n+1}
assert theta_n_balanced(3, 24) == theta_n(3, 24)

for n in range(1, 5):
    form, m = base_change_form(n)
    terms = decompose_theta(form, m, M_check=36)
    print(f"\nTheta_{n} = sum q^({form}) xi_{m}^k1")
    for t in terms:
        print(f"    {str(t.coefficient):>5} * Theta[{t.form}]")
    assert combination_series(terms, 36) == theta_n(n, 36)
    print("  tabulated decomposition:", "ok" if verify_table1(n, 36) else "MISMATCH")
