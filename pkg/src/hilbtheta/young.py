"""Torus-fixed points of Quot schemes on A_{n-1} counted by brute force.

Two independent formulations are provided: chains of Young diagrams with the
shifted diagrams ``Y^->`` / ``Y^/``, and chains of monomial ideals in
C[x, y] compared through divisibility of generators.

Boxes are pairs ``(a, b)`` meaning the monomial ``x^a y^b``; row ``b`` of a
diagram has length ``rows[b]``.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

__all__ = [
    "YoungDiagram",
    "ExtendedDiagram",
    "YoungTuple",
    "partitions",
    "contains",
    "enumerate_tuples",
    "appendix_index",
    "quot_count",
    "ideal_oracle",
    "monomial_ideals",
]


@dataclass(frozen=True, order=True)
class YoungDiagram:
    rows: tuple = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows):
            raise ValueError("row lengths must be positive")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError("row lengths must be weakly decreasing")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self):
        return sum(self.rows)

    def __contains__(self, box):
        a, b = box
        return 0 <= b < len(self.rows) and 0 <= a < self.rows[b]

    def boxes(self):
        return [(a, b) for b, r in enumerate(self.rows) for a in range(r)]

    def arrow(self):
        return ExtendedDiagram(self, "arrow")

    def diag(self):
        return ExtendedDiagram(self, "diag")

    def __str__(self):
        return "[" + ",".join(map(str, self.rows)) + "]"


@dataclass(frozen=True)
class ExtendedDiagram:
    """``Y^->`` (``kind="arrow"``): Y shifted by (1, 0) plus the column a = 0.
    ``Y^/`` (``kind="diag"``): Y shifted by (1, 1) plus both axes."""

    base: YoungDiagram
    kind: str

    def __post_init__(self):
        if self.kind not in ("arrow", "diag"):
            raise ValueError("kind must be 'arrow' or 'diag'")

    def __contains__(self, box):
        a, b = box
        if a < 0 or b < 0:
            return False
        if self.kind == "arrow":
            return a == 0 or (a - 1, b) in self.base
        return a == 0 or b == 0 or (a - 1, b - 1) in self.base


def contains(outer, inner):
    """Whether every box of ``inner`` is a box of ``outer``.

    ``inner`` may itself be an arrow-extended diagram, in which case the
    common column a = 0 is skipped (it lies in every extended diagram).
    """
    if isinstance(inner, ExtendedDiagram):
        if inner.kind != "arrow":
            raise ValueError("only arrow-extended diagrams can be the smaller side")
        return all((a + 1, b) in outer for a, b in inner.base.boxes())
    return all(box in outer for box in inner.boxes())


@lru_cache(maxsize=None)
def partitions(size, bound=None):
    """Partitions of ``size`` (weakly decreasing tuples), parts at most ``bound``."""
    if bound is None:
        bound = size
    if size == 0:
        return ((),)
    out = []
    for first in range(min(size, bound), 0, -1):
        for rest in partitions(size - first, first):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class YoungTuple:
    n: int
    j: int
    diagrams: tuple

    @property
    def size(self):
        return sum(d.size for d in self.diagrams)

    def satisfies_chain(self):
        """Check the full nesting chain with raw membership predicates."""
        Y, n, j = self.diagrams, self.n, self.j
        for i in range(n - 1, j, -1):
            if not contains(Y[i - 1], Y[i]):
                return False
        if j == 0:
            return contains(Y[n - 1].diag(), Y[0])
        if not contains(Y[j - 1].arrow(), Y[j]):
            return False
        for i in range(j - 1, 0, -1):
            if not contains(Y[i - 1].arrow(), Y[i].arrow()):
                return False
        return contains(Y[n - 1].diag(), Y[0].arrow())

    def rows(self):
        return [list(d.rows) for d in self.diagrams]

    def __str__(self):
        return " ".join(str(d) for d in self.diagrams)


def _bounded_diagrams(limits, max_size):
    # diagrams with rows[b] <= limits(b), size <= max_size
    out = []

    def rec(b, prev, left, rows):
        out.append(tuple(rows))
        cap = min(prev, left, limits(b))
        for r in range(cap, 0, -1):
            rows.append(r)
            rec(b + 1, r, left - r, rows)
            rows.pop()

    rec(0, max_size, max_size, [])
    return out


def enumerate_tuples(n, j, m):
    """All n-tuples (Y_0, ..., Y_{n-1}) with total size m satisfying

    ``Y_{n-1} c ... c Y_j c Y_{j-1}^-> c ... c Y_0^-> c Y_{n-1}^/``

    (for j = 0: ``Y_{n-1} c ... c Y_0 c Y_{n-1}^/``), sorted by row lists.
    """
    if n < 1 or not 0 <= j <= n - 1 or m < 0:
        raise ValueError(f"need n >= 1, 0 <= j < n, m >= 0; got n={n}, j={j}, m={m}")
    found = []

    def parent_limit(i, prev):
        rows = prev.rows
        if j >= 1 and i == j:
            # Y_j c Y_{j-1}^->: row b may be one longer than in Y_{j-1}
            return lambda b: 1 + (rows[b] if b < len(rows) else 0)
        # Y_i c Y_{i-1}; for i < j this is equivalent to the arrow containment
        return lambda b: rows[b] if b < len(rows) else 0

    def rec(i, chosen, left):
        if i == n:
            if left == 0:
                t = YoungTuple(n, j, tuple(chosen))
                last = chosen[-1]
                wrap = contains(last.diag(), chosen[0]) if j == 0 else \
                    contains(last.diag(), chosen[0].arrow())
                if wrap:
                    found.append(t)
            return
        if i == 0:
            cands = [r for s in range(left + 1) for r in partitions(s)]
        else:
            cands = _bounded_diagrams(parent_limit(i, chosen[-1]), left)
        for rows in cands:
            y = YoungDiagram(rows)
            chosen.append(y)
            rec(i + 1, chosen, left - y.size)
            chosen.pop()

    rec(0, [], m)
    found.sort(key=lambda t: tuple(d.rows for d in t.diagrams))
    return found


def appendix_index(n, j_sheaf):
    """Index j with O(-jD) isomorphic to O(j_sheaf D) on A_{n-1}."""
    if not 0 <= j_sheaf <= n - 1:
        raise ValueError(f"j must satisfy 0 <= j <= {n - 1}")
    return (n - j_sheaf) % n


def quot_count(n, j_sheaf, m):
    """chi(Quot^m(O_{A_{n-1}}(j_sheaf D))) by counting Young-diagram tuples."""
    return len(enumerate_tuples(n, appendix_index(n, j_sheaf), m))


# ---------------------------------------------------------------------------
# monomial ideals: generators are exponent pairs (a, b) for x^a y^b

def _minimalize(gens):
    gens = set(gens)
    return frozenset(g for g in gens
                     if not any(h != g and h[0] <= g[0] and h[1] <= g[1] for h in gens))


def _colength(gens):
    # number of standard monomials; finite since some x^a and y^b are generators
    amax = min(a for a, b in gens if b == 0)
    count = 0
    for a in range(amax):
        b = 0
        while not any(g[0] <= a and g[1] <= b for g in gens):
            b += 1
        count += b
    return count


@lru_cache(maxsize=None)
def monomial_ideals(colength):
    """Monomial ideals of C[x, y] of given colength, as minimal generator sets.

    Built by repeatedly replacing one generator g by x*g and y*g.
    """
    if colength == 0:
        return (frozenset({(0, 0)}),)
    out = set()
    for ideal in monomial_ideals(colength - 1):
        for g in ideal:
            new = _minimalize((ideal - {g}) | {(g[0] + 1, g[1]), (g[0], g[1] + 1)})
            if _colength(new) == colength:
                out.add(new)
    return tuple(sorted(out, key=sorted))


def _in_ideal(mono, gens):
    return any(g[0] <= mono[0] and g[1] <= mono[1] for g in gens)


def _ideal_subset(small, big):
    return all(_in_ideal(g, big) for g in small)


def ideal_oracle(n, j, m):
    """Count chains I'_0, ..., I'_{j-1}, I_j, ..., I_{n-1} of monomial ideals with

    ``xy I_{n-1} c I_0 c I_1 c ... c I_{n-1}``, ``I_k = x I'_k`` for k < j,

    and total colength m.  ``j`` uses the O(-jD) indexing.
    """
    if n < 1 or not 0 <= j <= n - 1 or m < 0:
        raise ValueError(f"need n >= 1, 0 <= j < n, m >= 0; got n={n}, j={j}, m={m}")
    count = 0
    for sizes in _compositions(m, n):
        for chain in iproduct(*(monomial_ideals(s) for s in sizes)):
            ideals = [frozenset((a + 1, b) for a, b in g) if k < j else g
                      for k, g in enumerate(chain)]
            if not all(_ideal_subset(ideals[k], ideals[k + 1]) for k in range(n - 1)):
                continue
            xy_last = [(a + 1, b + 1) for a, b in ideals[-1]]
            if _ideal_subset(xy_last, ideals[0]):
                count += 1
    return count


def _compositions(m, parts):
    if parts == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _compositions(m - first, parts - 1):
            yield (first,) + rest
