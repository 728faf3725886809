"""Generating series of Euler characteristics of Hilbert and Quot schemes of
points on A_n singularities and on surfaces with A_n singular points.

Two index conventions meet here.  The local product formula is written for
the germ ``A_{N-1}`` with polynomials ``f_N``; surfaces and the command line
name singular points ``A_n``.  :func:`local_parameter` is the only place the
two are converted.
"""

from dataclasses import dataclass
from fractions import Fraction

from .lattice import theta_n
from .qspecial import IdentityReport, double_product, euler_product
from .series import QSeries

__all__ = [
    "local_parameter",
    "SurfaceSpec",
    "QuotIndex",
    "hilb_series_A",
    "quot_series_A",
    "theta_from_hilb",
    "surface_hilb_series",
    "SurfaceSeries",
    "k_independence_check",
]


def local_parameter(n_sing):
    """Product-formula parameter N for an A_{n_sing} point (germ A_{N-1})."""
    if n_sing < 0:
        raise ValueError(f"A_n needs n >= 0, got {n_sing}")
    return n_sing + 1


@dataclass(frozen=True)
class QuotIndex:
    """Slot ``t^{kn - j}`` of the product formula for O(jD) on A_{n-1}."""

    n: int
    j: int
    k: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.j <= self.n - 1:
            raise ValueError(f"j must satisfy 0 <= j <= {self.n - 1}, got {self.j}")

    @classmethod
    def from_t_exponent(cls, n, e):
        k, r = divmod(e, n)
        if r:
            k += 1
        return cls(n, k * n - e, k)

    @property
    def t_exponent(self):
        return self.k * self.n - self.j

    @property
    def q_shift(self):
        return self.n * self.k * (self.k + 1) // 2 - self.j * self.k


def hilb_series_A(n_sing, M):
    """``sum_m chi(Hilb^m(A_{n_sing})) q^m`` to order M (n_sing = 0 is the plane)."""
    n = local_parameter(n_sing)
    return double_product(n, M, 0).coeff(0)


def quot_series_A(n, j, k, M, product=None):
    """``sum_m chi(Quot^m(O_{A_{n-1}}(jD))) q^m`` read off the t^{kn-j} slot.

    ``product`` may be a precomputed :func:`double_product` for this n; it is
    rejected if its window or q-order cannot supply the slot.
    """
    idx = QuotIndex(n, j, k)
    e, s = idx.t_exponent, idx.q_shift
    need_E, need_M = abs(e), M + s
    if product is None:
        product = double_product(n, need_M, need_E)
    elif product.t_window < need_E or product.q_order < need_M:
        raise ValueError(
            f"slot t^{e} to q^{M} needs t-window >= {need_E} and q-order >= {need_M}; "
            f"product has window {product.t_window}, order {product.q_order}")
    c = product.coeff(e)
    return QSeries.from_coeffs(c.coeffs[s:s + M + 1], M)


def theta_from_hilb(n, M):
    """``prod (1 - q^m)^{n+1} * Hilb(A_n)``, which is Theta_n."""
    return euler_product(n + 1, M) * hilb_series_A(n, M)


@dataclass(frozen=True)
class SurfaceSpec:
    """Surface smooth away from A_{n_i} points.

    Supply the Euler number of the minimal resolution, of the surface, or
    both (then they must agree).
    """

    singularities: tuple = ()
    chi_resolution: int = None
    chi_surface: int = None

    def __post_init__(self):
        sing = tuple(int(x) for x in self.singularities)
        if any(x < 1 for x in sing):
            raise ValueError("singularity indices must be >= 1")
        object.__setattr__(self, "singularities", sing)
        if self.chi_resolution is None and self.chi_surface is None:
            raise ValueError("need chi_resolution or chi_surface")
        exc = sum(x + 1 for x in sing) - len(sing)
        if self.chi_resolution is None:
            object.__setattr__(self, "chi_resolution", self.chi_surface + exc)
        elif self.chi_surface is None:
            object.__setattr__(self, "chi_surface", self.chi_resolution - exc)
        elif self.chi_resolution != self.chi_surface + exc:
            raise ValueError(
                f"inconsistent Euler numbers: chi_resolution={self.chi_resolution} implies "
                f"chi_surface={self.chi_resolution - exc}, chi_surface={self.chi_surface} "
                f"implies chi_resolution={self.chi_surface + exc}")

    @property
    def chi_smooth_part(self):
        return self.chi_surface - len(self.singularities)

    @property
    def weight(self):
        return Fraction(-self.chi_surface, 2)


@dataclass(frozen=True)
class SurfaceSeries:
    series: QSeries
    weight: Fraction
    spec: SurfaceSpec


def surface_hilb_series(spec, M, normalized=True):
    """``eta^{-chi(S~)} * prod_i Theta_{n_i}``; with ``normalized`` the
    ``q^{-chi(S~)/24}`` prefactor is dropped so coefficient m is chi(Hilb^m(S))."""
    out = euler_product(-spec.chi_resolution, M)
    for n in spec.singularities:
        out = out * theta_n(n, M)
    if not normalized:
        out = out.with_offset(Fraction(-spec.chi_resolution, 24))
    return SurfaceSeries(out, spec.weight, spec)


def k_independence_check(n, j, k_range, M):
    """Every slot t^{kn-j}, |k| <= k_range, carries the same Quot series."""
    ref = quot_series_A(n, j, 0, M)
    for k in range(-k_range, k_range + 1):
        got = quot_series_A(n, j, k, M)
        if got != ref:
            bad = next(i for i in range(M + 1) if got[i] != ref[i])
            return IdentityReport("k-independence", False,
                                  {"k": k, "q_power": bad, "left": got[bad], "right": ref[bad]},
                                  {"n": n, "j": j, "order": M})
    return IdentityReport("k-independence", True, None, {"n": n, "j": j, "order": M})
