"""Exact rational rank and positive-kernel tests for small matrices.

The gluing feasibility question reduces to two pieces of exact linear
algebra on a matrix with rational entries:

* its rank;
* whether its kernel contains a strictly positive vector.

A strictly positive kernel vector exists iff the system

    M s = -M 1,   s >= 0

is feasible (then w = 1 + s >= 1 is such a vector, and conversely any
strictly positive kernel vector rescales to one with minimum entry 1).
Feasibility is decided by a phase-one simplex with Bland's rule, entirely
in ``fractions.Fraction`` arithmetic.  The matrices arising here have at
most a handful of rows and a few dozen columns, so exactness costs
nothing.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[Fraction, ...], ...]


def rational_rank(rows) -> int:
    """Rank of a matrix given as an iterable of equal-length rows."""
    work = [list(map(Fraction, row)) for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    col = 0
    while rank < len(work) and col < ncols:
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        for r in range(rank + 1, len(work)):
            factor = work[r][col] / pv
            if factor:
                for c in range(col, ncols):
                    work[r][c] -= factor * work[rank][c]
        rank += 1
        col += 1
    return rank


def positive_kernel_vector(rows, ncols: int):
    """A strictly positive rational w with M w = 0, or None.

    Parameters
    ----------
    rows : iterable of rows
        The matrix M; may be empty (no constraints).
    ncols : int
        Number of columns of M, needed explicitly when M has no rows.

    Returns
    -------
    tuple of Fraction or None
        A vector with every entry >= 1 annihilated by M, if one exists.
    """
    if ncols == 0:
        return None
    rows = [tuple(map(Fraction, row)) for row in rows]
    if not rows:
        return tuple(Fraction(1) for _ in range(ncols))
    rhs = [-sum(row) for row in rows]
    s = solve_nonneg(rows, rhs)
    if s is None:
        return None
    return tuple(1 + x for x in s)


def solve_nonneg(rows, rhs):
    """Solve M s = b with s >= 0 exactly; return s or None.

    Phase-one simplex: minimise the sum of artificial variables over
    ``M s + I a = b`` (rows negated as needed so b >= 0).  Bland's rule
    guarantees termination.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    tableau = []
    b = []
    for row, bi in zip(rows, rhs):
        row = list(map(Fraction, row))
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        tableau.append(row)
        b.append(bi)
    # Append the artificial identity block.
    for i in range(m):
        tableau[i].extend(Fraction(1) if j == i else Fraction(0) for j in range(m))
    basis = [n + i for i in range(m)]

    # Reduced-cost row for minimising the artificial sum: artificial
    # columns start with cost 0, structural columns with -(column sum).
    obj = [-sum(tableau[i][j] for i in range(m)) for j in range(n)]
    obj += [Fraction(0)] * m

    while True:
        # Bland's rule: smallest-index entering and leaving variables.
        enter = next((j for j, cj in enumerate(obj) if cj < 0), None)
        if enter is None:
            break
        ratios = [
            (b[i] / tableau[i][enter], basis[i], i)
            for i in range(m)
            if tableau[i][enter] > 0
        ]
        if not ratios:
            # Unbounded phase-one problem cannot happen (objective >= 0),
            # but guard against malformed input.
            return None
        _, _, leave = min(ratios)
        _pivot(tableau, b, obj, enter, leave)
        basis[leave] = enter

    # Optimal artificial sum: recompute from the basic solution.
    total = sum(b[i] for i in range(m) if basis[i] >= n)
    if total != 0:
        return None
    solution = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = b[i]
    return tuple(solution)


def _pivot(tableau, b, obj, enter: int, leave: int) -> None:
    m = len(tableau)
    pv = tableau[leave][enter]
    tableau[leave] = [x / pv for x in tableau[leave]]
    b[leave] /= pv
    for i in range(m):
        if i != leave and tableau[i][enter]:
            factor = tableau[i][enter]
            tableau[i] = [x - factor * y for x, y in zip(tableau[i], tableau[leave])]
            b[i] -= factor * b[leave]
    if obj[enter]:
        factor = obj[enter]
        for j in range(len(obj)):
            obj[j] -= factor * tableau[leave][j]
