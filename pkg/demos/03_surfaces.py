"""
Surfaces with A_n singular points
=================================

For a surface S whose singularities are A_{n_i} points, the Hilbert scheme
series is eta^{-chi(S~)} * prod Theta_{n_i}, with S~ the minimal resolution.
"""

from hilbtheta import SurfaceSpec, surface_hilb_series

# smooth K3: Goettsche's eta^{-24}
k3 = surface_hilb_series(SurfaceSpec((), chi_resolution=24), 8)
print("K3:", list(k3.series.coeffs), "weight", k3.weight)

# a K3 with 16 A_1 points (the Kummer surface): chi(S~) = 24
kummer = SurfaceSpec((1,) * 16, chi_resolution=24)
res = surface_hilb_series(kummer, 8)
print("Kummer: chi(S) =", kummer.chi_surface, "weight", res.weight)
print("   ", list(res.series.coeffs))

# projective plane with one A_2 point, given by chi of the singular surface
spec = SurfaceSpec((2,), chi_surface=3)
res = surface_hilb_series(spec, 8, normalized=False)
print("offset", res.series.offset, "coefficients", list(res.series.coeffs))
