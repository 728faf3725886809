"""
Hilbert and Quot series of an A_n singularity
=============================================

The local series are read off a two-variable infinite product and checked
against a brute-force count of Young-diagram tuples.
"""

from hilbtheta import double_product, hilb_series_A, quot_series_A
from hilbtheta.young import appendix_index, enumerate_tuples

# Euler characteristics of Hilb^m(A_1): the t^0 coefficient of the product
# with f_2(x) = 1 + x + x^2
print("Hilb(A_1):", list(hilb_series_A(1, 10).coeffs))

# The whole product for the germ A_1 (parameter 2); every slot t^{2k - j}
# holds the Quot series of O(jD) shifted by q^{k(k+1) - jk}
prod = double_product(2, 8)
for d in range(-3, 4):
    print(f"  t^{d:+d}:", list(prod.coeff(d).coeffs))

# Quot schemes of the rank one reflexive sheaves on A_2
for j in range(3):
    print(f"Quot(O({j}D)) on A_2:", list(quot_series_A(3, j, 0, 8).coeffs))

# Torus-fixed points: pairs of Young diagrams for Hilb^5(A_1)
tuples = enumerate_tuples(2, appendix_index(2, 0), 5)
print(len(tuples), "pairs:")
for t in tuples:
    print("  ", t)
