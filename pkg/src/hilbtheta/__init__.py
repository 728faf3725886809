"""Euler characteristics of Hilbert and Quot schemes of points on surfaces
with A_n singularities, computed exactly.

The generating series are available three ways: coefficient extraction from
an infinite product in two variables, the closed form ``eta^{-chi} * prod
Theta_{n_i}``, and brute-force enumeration of Young-diagram tuples.  The
weighted lattice sums ``Theta_n`` can be decomposed into rational
combinations of theta series of positive definite quadratic forms.
"""

from .arith import cyclotomic_poly, divisors, euler_phi, mobius, ramanujan_sum
from .hilb import (QuotIndex, SurfaceSpec, hilb_series_A, k_independence_check,
                   local_parameter, quot_series_A, surface_hilb_series, theta_from_hilb)
from .lattice import (DecompositionTerm, NotPositiveDefiniteError, QuadraticForm,
                      StratumSpec, base_change_form, decompose_theta,
                      decompose_theta_recursive, galois_invariance_check,
                      lattice_points_below, theta_form, theta_n, theta_n_balanced,
                      theta_qm, verify_table1)
from .qspecial import (IdentityReport, double_product, eta_power, euler_product, fn_poly,
                       jacobi_triple_check)
from .series import (CycElem, NotRationalError, QSeries, TLaurentSeries, cyc_rationalize,
                     qs_add, qs_inv, qs_mul, tl_mul)
from .young import (ExtendedDiagram, YoungDiagram, YoungTuple, contains, enumerate_tuples,
                    ideal_oracle, quot_count)

__version__ = "0.1.0"
