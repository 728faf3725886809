import itertools

import pytest

_ACCEPTANCE = []


def brute_partition_count(m):
    """Count multisets of positive integers summing to m by listing
    non-increasing sequences."""
    def rec(left, cap):
        if left == 0:
            return 1
        return sum(rec(left - p, p) for p in range(1, min(left, cap) + 1))
    return rec(m, m)


def poly_mul(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= order:
                out[i + j] += x * y
    return out


def expand_product(factors, order):
    out = [1] + [0] * order
    for f in factors:
        out = poly_mul(out, f, order)
    return out


def brute_theta(coeffs, rank, M, box):
    """Representation numbers of sum c_ij k_i k_j over the cube |k_i| <= box."""
    counts = [0] * (M + 1)
    for k in itertools.product(range(-box, box + 1), repeat=rank):
        v = sum(c * k[i - 1] * k[j - 1] for (i, j), c in coeffs.items())
        if v <= M:
            counts[v] += 1
    return counts


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
