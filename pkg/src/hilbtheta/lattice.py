"""Quadratic forms, lattice enumeration and theta series.

Covers the root-of-unity weighted sums ``Theta_n``, their rewriting as
``sum q^{Q(k)} xi_m^{k_1}`` after a change of basis, and the decomposition of
such Galois-invariant sums into rational combinations of ordinary theta
series of positive definite forms.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import divisors, euler_phi, mobius
from .qspecial import IdentityReport
from .series import CycElem, QSeries, cyc_rationalize, exact, format_rational, parse_rational

__all__ = [
    "QuadraticForm",
    "NotPositiveDefiniteError",
    "DecompositionTerm",
    "StratumSpec",
    "lattice_points_below",
    "theta_form",
    "theta_phase_sums",
    "theta_qm",
    "theta_n",
    "theta_n_balanced",
    "theta_n_via_base_change",
    "theta_n_form",
    "base_change_form",
    "galois_invariance_check",
    "decompose_theta",
    "decompose_theta_recursive",
    "combination_series",
    "TABLE1",
    "verify_table1",
]

WORKERS_ENV = "HILBTHETA_WORKERS"


class NotPositiveDefiniteError(ValueError):
    def __init__(self, msg, minor_index=None):
        super().__init__(msg)
        self.minor_index = minor_index


def _det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return det


@dataclass(frozen=True)
class QuadraticForm:
    """Integer-valued form ``Q(k) = sum_{i<=j} c_ij k_i k_j`` on Z^rank.

    ``upper`` is a tuple of rows; ``upper[i][j]`` holds c_ij for i <= j
    (0-based) and is zero below the diagonal.  Positive definiteness is
    checked on construction.
    """

    rank: int
    upper: tuple

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise ValueError("rank must be >= 1")
        up = tuple(tuple(int(self.upper[i][j]) if j >= i else 0 for j in range(n))
                   for i in range(n))
        object.__setattr__(self, "upper", up)
        g = self.gram()
        for k in range(1, n + 1):
            if _det([row[:k] for row in g[:k]]) <= 0:
                raise NotPositiveDefiniteError(
                    f"form {self} is not positive definite: leading minor {k} is not positive",
                    minor_index=k)

    @classmethod
    def from_coeffs(cls, rank, coeffs):
        """From ``{(i, j): c}`` with 1-based indices i <= j."""
        up = [[0] * rank for _ in range(rank)]
        for (i, j), c in coeffs.items():
            i, j = min(i, j), max(i, j)
            if not (1 <= i <= rank and 1 <= j <= rank):
                raise ValueError(f"index ({i}, {j}) out of range for rank {rank}")
            up[i - 1][j - 1] += c
        return cls(rank, tuple(map(tuple, up)))

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls(n, tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                            for i in range(n)))

    @classmethod
    def from_gram(cls, gram):
        n = len(gram)
        up = []
        for i in range(n):
            row = []
            for j in range(n):
                if j < i:
                    row.append(0)
                elif j == i:
                    if gram[i][i] % 2:
                        raise ValueError("Gram matrix diagonal must be even")
                    row.append(gram[i][i] // 2)
                else:
                    row.append(gram[i][j])
            up.append(tuple(row))
        return cls(n, tuple(up))

    def gram(self):
        """Symmetric matrix G with Q(k) = k^T G k / 2."""
        n = self.rank
        return [[2 * self.upper[i][i] if i == j else self.upper[min(i, j)][max(i, j)]
                 for j in range(n)] for i in range(n)]

    def __call__(self, k):
        up = self.upper
        return sum(up[i][j] * k[i] * k[j]
                   for i in range(self.rank) for j in range(i, self.rank))

    def coeffs(self):
        """Non-zero ``{(i, j): c}`` with 1-based indices."""
        return {(i + 1, j + 1): self.upper[i][j]
                for i in range(self.rank) for j in range(i, self.rank) if self.upper[i][j]}

    def substitute(self, matrix):
        """Form ``y -> Q(U y)`` for an integer matrix U (rows of lists)."""
        g = self.gram()
        n = self.rank
        ug = [[sum(matrix[k][i] * g[k][l] for k in range(n)) for l in range(n)]
              for i in range(n)]
        new = [[sum(ug[i][l] * matrix[l][j] for l in range(n)) for j in range(n)]
               for i in range(n)]
        return QuadraticForm.from_gram(new)

    def scale_first(self, s):
        """``k -> Q(s k_1, k_2, ..., k_n)``."""
        u = [[int(i == j) for j in range(self.rank)] for i in range(self.rank)]
        u[0][0] = s
        return self.substitute(u)

    def __str__(self):
        parts = []
        for (i, j), c in sorted(self.coeffs().items(), key=lambda t: (t[0][0] != t[0][1], t[0])):
            mono = f"k{i}^2" if i == j else f"k{i}k{j}"
            if self.rank == 1:
                mono = "k^2"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {mag}{mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_record(self):
        return {"rank": str(self.rank),
                "coeffs": [[str(i), str(j), str(c)] for (i, j), c in sorted(self.coeffs().items())]}

    @classmethod
    def from_record(cls, rec):
        return cls.from_coeffs(int(rec["rank"]),
                               {(int(i), int(j)): int(c) for i, j, c in rec["coeffs"]})


@dataclass(frozen=True)
class DecompositionTerm:
    coefficient: Fraction
    form: QuadraticForm

    def to_record(self):
        c = Fraction(self.coefficient)
        return {"coefficient_num": str(c.numerator), "coefficient_den": str(c.denominator),
                "form": self.form.to_record()}

    @classmethod
    def from_record(cls, rec):
        return cls(exact(Fraction(int(rec["coefficient_num"]), int(rec["coefficient_den"]))),
                   QuadraticForm.from_record(rec["form"]))


@dataclass(frozen=True)
class StratumSpec:
    """Subset of Z^n cut out by a condition on k_1: ``kind == "S"`` means
    gcd(k_1, modulus) == divisor_index, ``kind == "T"`` means
    divisor_index | k_1."""

    modulus: int
    divisor_index: int
    kind: str

    def __post_init__(self):
        if self.modulus % self.divisor_index:
            raise ValueError("divisor_index must divide modulus")
        if self.kind not in ("S", "T"):
            raise ValueError("kind must be 'S' or 'T'")

    def contains(self, k):
        if self.kind == "S":
            return gcd(k[0], self.modulus) == self.divisor_index
        return k[0] % self.divisor_index == 0


# ---------------------------------------------------------------------------
# enumeration

def _completion(form):
    # Q(x) = sum_i h[i][i] * (x_i + sum_{j>i} h[i][j] x_j)^2
    n = form.rank
    h = [[Fraction(form.gram()[i][j], 2) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            h[j][i] = h[i][j]
            h[i][j] = h[i][j] / h[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                h[k][l] -= h[k][i] * h[i][l]
    return h


def _interval(center, budget, weight):
    # integers x with weight * (x - center)^2 <= budget
    if budget < 0:
        return range(0)
    r2 = budget / weight
    rf = isqrt(r2.numerator * r2.denominator) // r2.denominator
    lo = (center.numerator // center.denominator) - rf - 1
    hi = -((-center.numerator) // center.denominator) + rf + 1
    return [x for x in range(lo, hi + 1) if weight * (x - center) ** 2 <= budget]


def _enumerate(h, n, M, top_values=None):
    x = [0] * n
    M = Fraction(M)

    def rec(i, used):
        c = -sum((h[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        vals = _interval(c, M - used, h[i][i])
        if i == n - 1 and top_values is not None:
            vals = [v for v in vals if v in top_values]
        for v in vals:
            x[i] = v
            u = used + h[i][i] * (v - c) ** 2
            if i == 0:
                yield tuple(x), int(u)
            else:
                yield from rec(i - 1, u)
        x[i] = 0

    yield from rec(n - 1, Fraction(0))


def lattice_points_below(form, M):
    """Yield ``(vector, Q(vector))`` for every lattice vector with Q <= M."""
    if M < 0:
        return
    yield from _enumerate(_completion(form), form.rank, M)


def _theta_chunk(args):
    form, M, tops = args
    counts = [0] * (M + 1)
    for _, v in _enumerate(_completion(form), form.rank, M, set(tops)):
        counts[v] += 1
    return counts


def _workers():
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def theta_form(form, M, workers=None):
    """``sum_{k in Z^n} q^{Q(k)}`` to order M.

    With more than one worker the enumeration is split on the outermost
    coordinate and the per-worker counts are summed.
    """
    workers = _workers() if workers is None else workers
    if workers > 1 and M >= 0:
        h = _completion(form)
        tops = list(_interval(Fraction(0), Fraction(M), h[-1][-1]))
        chunks = [tops[i::workers] for i in range(workers) if tops[i::workers]]
        counts = [0] * (M + 1)
        with ProcessPoolExecutor(len(chunks)) as ex:
            for part in ex.map(_theta_chunk, [(form, M, c) for c in chunks]):
                counts = [a + b for a, b in zip(counts, part)]
    else:
        counts = [0] * (M + 1)
        for _, v in lattice_points_below(form, M):
            counts[v] += 1
    return QSeries.from_coeffs(counts, M)


def combination_series(terms, M):
    """``sum a_i Theta_{Q_i}`` to order M."""
    total = QSeries.zero(M)
    for t in terms:
        total = total + theta_form(t.form, M) * t.coefficient
    return total


# ---------------------------------------------------------------------------
# root-of-unity weighted sums

def _rationalize_counts(counts, m, M):
    coeffs = []
    for v in range(M + 1):
        coeffs.append(cyc_rationalize(CycElem(m, tuple(counts[v]))))
    return QSeries.from_coeffs(coeffs, M)


def _require_integral(series, what):
    if not series.is_integral():
        raise AssertionError(f"{what} has non-integral coefficients: {series.coeffs}")
    return series


def _box_vectors(n, budget):
    # all k in Z^n with sum k_i^2 <= budget
    k = [0] * n

    def rec(i, left):
        r = isqrt(left)
        for v in range(-r, r + 1):
            k[i] = v
            if i == n - 1:
                yield tuple(k)
            else:
                yield from rec(i + 1, left - v * v)

    yield from rec(0, budget)


def theta_n(n, M):
    """``Theta_n = sum_{k in Z^n} q^{sum_{i<=j} k_i k_j} xi_{n+2}^{k_1 + 2 k_2 + ... + n k_n}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n + 2
    counts = [[0] * m for _ in range(M + 1)]
    # sum_{i<=j} k_i k_j = ((sum k)^2 + sum k^2) / 2, so sum k^2 <= 2M
    for k in _box_vectors(n, 2 * M):
        s = sum(k)
        v = (s * s + sum(x * x for x in k)) // 2
        if v <= M:
            counts[v][sum((i + 1) * x for i, x in enumerate(k)) % m] += 1
    return _require_integral(_rationalize_counts(counts, m, M), f"Theta_{n}")


def theta_n_balanced(n, M):
    """The same series written as a sum over k in Z^{n+1} with zero sum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n + 2
    counts = [[0] * m for _ in range(M + 1)]
    for k in _box_vectors(n, 2 * M):
        last = -sum(k)
        sq = sum(x * x for x in k) + last * last
        if sq <= 2 * M:
            phase = sum((i + 1) * x for i, x in enumerate(k)) + (n + 1) * last
            counts[sq // 2][phase % m] += 1
    return _require_integral(_rationalize_counts(counts, m, M), f"balanced Theta_{n}")


def theta_n_form(n):
    """The form ``sum_{1<=i<=j<=n} k_i k_j`` appearing in the exponent of Theta_n."""
    return QuadraticForm(n, tuple(tuple(1 if j >= i else 0 for j in range(n)) for i in range(n)))


def base_change_form(n):
    """Form Q and modulus n+2 with ``Theta_n = sum q^{Q(k)} xi_{n+2}^{k_1}``.

    Obtained by substituting ``k_1 -> k_1 - 2 k_2 - ... - n k_n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(1, n):
        u[0][j] = -(j + 1)
    return theta_n_form(n).substitute(u), n + 2


def theta_phase_sums(form, m, M):
    """Per q-power cyclotomic values of ``sum q^{Q(k)} xi_m^{k_1}``."""
    counts = [[0] * m for _ in range(M + 1)]
    for k, v in lattice_points_below(form, M):
        counts[v][k[0] % m] += 1
    return [CycElem(m, tuple(c)) for c in counts]


def theta_qm(form, m, M):
    """``sum q^{Q(k)} xi_m^{k_1}`` as a rational series (must be Galois invariant)."""
    vals = theta_phase_sums(form, m, M)
    return QSeries.from_coeffs([cyc_rationalize(x) for x in vals], M)


def theta_n_via_base_change(n, M):
    form, m = base_change_form(n)
    return _require_integral(theta_qm(form, m, M), f"Theta_{n} via base change")


def galois_invariance_check(form, m, M):
    """Check that every coefficient of ``sum q^{Q(k)} xi_m^{k_1}`` is fixed by
    all substitutions xi_m -> xi_m^s with gcd(s, m) = 1."""
    vals = theta_phase_sums(form, m, M)
    units = [s for s in range(1, m) if gcd(s, m) == 1] or [1]
    for v, x in enumerate(vals):
        red = x.reduce()
        for s in units:
            if x.conjugate(s).reduce() != red:
                return IdentityReport("galois-invariance", False,
                                      {"q_power": v, "conjugate": s},
                                      {"modulus": m, "order": M})
    return IdentityReport("galois-invariance", True, None, {"modulus": m, "order": M})


# ---------------------------------------------------------------------------
# decomposition

def _terms_from_scales(form, scales, m):
    # scales: {s: coefficient of Theta_{Q(s k_1, ...)}}
    return [DecompositionTerm(exact(c), form.scale_first(s))
            for s, c in sorted(scales.items()) if c]


def _closed_form_scales(m):
    phi = euler_phi(m)
    scales = {}
    for mi in divisors(m):
        mp = m // mi
        a_i = phi // euler_phi(mp) * mobius(mp)
        if not a_i:
            continue
        # gcd(k_1, m') = 1 expanded by Moebius over d | m'
        for d in divisors(mp):
            mu = mobius(d)
            if mu:
                scales[mi * d] = scales.get(mi * d, 0) + Fraction(a_i * mu, phi)
    return scales


def _recursive_scales(m):
    divs = divisors(m)
    phi = euler_phi(m)
    units = [s for s in range(1, m + 1) if gcd(s, m) == 1]
    # S_i as combinations of T_j, eliminating from the largest divisor down
    s_in_t = {}
    for mi in reversed(divs):
        combo = {mi: 1}
        for mj in divs:
            if mj > mi and mj % mi == 0:
                for t, c in s_in_t[mj].items():
                    combo[t] = combo.get(t, 0) - c
        s_in_t[mi] = combo
    scales = {}
    for mi in divs:
        # Galois orbit sum of xi_m^{m_i}, by reduction modulo Phi_m
        orbit = CycElem.zero(m)
        for s in units:
            orbit = orbit + CycElem.root_power(m, s * mi)
        red = orbit.reduce()
        if len(red) > 1:
            raise AssertionError("Galois orbit sum is not rational")
        g = red[0] if red else 0
        for t, c in s_in_t[mi].items():
            scales[t] = scales.get(t, 0) + Fraction(g * c, phi)
    return scales


def decompose_theta(form, m, M_check=36):
    """Write ``sum q^{Q(k)} xi_m^{k_1}`` as ``sum a_i Theta_{Q_i}``.

    Returns a list of :class:`DecompositionTerm`.  The result is checked
    against the weighted sum itself up to ``q^M_check`` before returning.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    rep = galois_invariance_check(form, m, M_check)
    if not rep:
        raise ValueError(
            f"sum is not Galois invariant: conjugate xi -> xi^{rep.discrepancy['conjugate']} "
            f"differs at q^{rep.discrepancy['q_power']}")
    terms = _terms_from_scales(form, _closed_form_scales(m), m)
    target = theta_qm(form, m, M_check)
    got = combination_series(terms, M_check)
    if got != target:
        bad = next(i for i in range(M_check + 1) if got[i] != target[i])
        raise AssertionError(f"decomposition residual at q^{bad}: {got[bad]} != {target[bad]}")
    return terms


def decompose_theta_recursive(form, m):
    """Same decomposition via the stratum recursion and direct orbit sums."""
    return _terms_from_scales(form, _recursive_scales(m), m)


# ---------------------------------------------------------------------------
# tabulated decompositions for 1 <= n <= 4

def _qf(rank, **kw):
    coeffs = {}
    for key, c in kw.items():
        coeffs[(int(key[1]), int(key[2]))] = c
    return QuadraticForm.from_coeffs(rank, coeffs)


_ALL_ONES_3 = _qf(3, c11=1, c22=1, c33=1, c12=1, c13=1, c23=1)
_ALL_ONES_4 = _qf(4, c11=1, c22=1, c33=1, c44=1, c12=1, c23=1, c34=1, c13=1, c14=1, c24=1)


TABLE1 = {
    1: [(Fraction(-1, 2), QuadraticForm.diag(1)),
        (Fraction(3, 2), QuadraticForm.diag(9))],
    2: [(Fraction(-1), QuadraticForm.diag(3, 1)),
        (Fraction(2), QuadraticForm.diag(3, 4))],
    3: [(Fraction(-1, 4), _ALL_ONES_3),
        (Fraction(5, 4), _qf(3, c11=25, c22=3, c33=7, c12=-15, c13=-25, c23=8))],
    4: [(Fraction(1, 2), _ALL_ONES_4),
        (Fraction(-1), _qf(4, c11=4, c22=3, c33=7, c44=13, c12=-6, c23=8, c34=18,
                           c13=-10, c14=-14, c24=11)),
        (Fraction(-3, 2), _qf(4, c11=9, c22=3, c33=7, c44=13, c12=-9, c23=8, c34=18,
                              c13=-15, c14=-21, c24=11)),
        (Fraction(3), _qf(4, c11=36, c22=3, c33=7, c44=13, c12=-18, c23=8, c34=18,
                          c13=-30, c14=-42, c24=11))],
}


def verify_table1(n, M):
    """Compare the tabulated combination for Theta_n against the direct sum."""
    if n not in TABLE1:
        raise ValueError("tabulated for 1 <= n <= 4 only")
    terms = [DecompositionTerm(c, f) for c, f in TABLE1[n]]
    lhs = theta_n(n, M)
    rhs = combination_series(terms, M)
    for i in range(M + 1):
        if lhs[i] != rhs[i]:
            return IdentityReport(f"table1-n{n}", False,
                                  {"q_power": i, "left": lhs[i], "right": rhs[i]}, {"order": M})
    return IdentityReport(f"table1-n{n}", True, None, {"order": M})
