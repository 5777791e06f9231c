"""Exact rank and positive-kernel solver."""

import random
from fractions import Fraction

from cscglue.exactlp import positive_kernel_vector, rational_rank, solve_nonneg


def F(x):
    return Fraction(x)


def test_rank_basic():
    assert rational_rank(()) == 0
    assert rational_rank(((F(0), F(0)),)) == 0
    assert rational_rank(((F(1), F(2)),)) == 1
    assert rational_rank(((F(1), F(2)), (F(2), F(4)))) == 1
    assert rational_rank(((F(1), F(0)), (F(0), F(1)))) == 2
    assert rational_rank(((F(1), F(2), F(3)), (F(2), F(4), F(6)), (F(0), F(1), F(1)))) == 2


def test_positive_kernel_one_row():
    w = positive_kernel_vector(((F(-1), F(1)),), 2)
    assert w is not None
    assert -w[0] + w[1] == 0
    assert all(x >= 1 for x in w)
    assert positive_kernel_vector(((F(-1), F(-1)),), 2) is None
    assert positive_kernel_vector(((F(1), F(1)),), 2) is None
    assert positive_kernel_vector(((F(1), F(-3), F(1)),), 3) is not None


def test_positive_kernel_edge_cases():
    assert positive_kernel_vector((), 0) is None
    assert positive_kernel_vector((), 3) == (F(1), F(1), F(1))
    # Zero row constrains nothing.
    assert positive_kernel_vector(((F(0), F(0)),), 2) is not None
    # Zero column together with a one-signed row: still infeasible.
    assert positive_kernel_vector(((F(0), F(1)),), 2) is None


def test_positive_kernel_two_rows():
    rows = ((F(1), F(-1), F(0)), (F(0), F(1), F(-1)))
    w = positive_kernel_vector(rows, 3)
    assert w is not None
    for row in rows:
        assert sum(a * x for a, x in zip(row, w)) == 0
    rows = ((F(1), F(-1), F(0)), (F(1), F(1), F(-1)))
    w = positive_kernel_vector(rows, 3)
    assert w is not None
    assert w[2] == 2 * w[0]


def test_solve_nonneg_direct():
    # x1 + x2 = 2, x1 - x2 = 0 has the solution (1, 1).
    s = solve_nonneg([(F(1), F(1)), (F(1), F(-1))], [F(2), F(0)])
    assert s == (F(1), F(1))
    # Infeasible: x1 + x2 = -1 with x >= 0.
    assert solve_nonneg([(F(1), F(1))], [F(-1)]) is None


def test_randomised_against_construction():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(1, 6)
        # Build a row that annihilates a known positive vector.
        w = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)]
        if n == 1:
            row = [F(0)]
        else:
            row = [Fraction(rng.randint(-4, 4)) for _ in range(n - 1)]
            tail = -sum(a * x for a, x in zip(row, w))
            row.append(tail / w[-1])
        got = positive_kernel_vector((tuple(row),), n)
        assert got is not None
        assert sum(a * x for a, x in zip(row, got)) == 0
        assert all(x > 0 for x in got)


def test_randomised_infeasible():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 6)
        row = [Fraction(rng.randint(1, 5)) for _ in range(n)]  # all positive
        assert positive_kernel_vector((tuple(row),), n) is None
