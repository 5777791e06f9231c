"""Exact log-term coefficients and masses of toric ALE scalar-flat metrics.

The torus-symmetric scalar-flat Kähler metrics on Hirzebruch-Jung
resolutions are built from monopole-type data on the half-plane: a
strictly decreasing sequence of levels

    infinity >= y_0 > y_1 > ... > y_{k+1} = 0

and integer charge pairs (a_j, b_j), one per level.  For the resolution of
C^2/Gamma_{p,q} the charges come from the continued-fraction approximants
(m_j, n_j) of q/p via

    (a_j, b_j) = (m_j - m_{j+1}, n_j - n_{j+1}).

The Kähler potential of such a metric expands at infinity as

    f/q = r^2/4 + ((a + b)/2) log r + ((a - b)/4) cos^2(theta) + ...

where the pair (a, b) solves

    a (q, p) + b (0, -1) = sum_j y_j^{-1} (a_j, b_j).

Writing c_j = y_j^{-1} (with c_0 = 0 when y_0 is infinite) and telescoping
gives the closed forms

    q a = sum_{j=0}^{k+1} (c_j - c_{j-1}) m_j
    q b = sum_{j=0}^{k+1} (c_j - c_{j-1}) (p m_j - q n_j)

with the conventions c_{-1} = c_{k+1} = 0.  Substituting the positive
parameters u_j = m_j (c_j - c_{j-1}) turns the log coefficient
mu = a + b into

    mu = sum_{j=1}^{k} (p/q - n_j/m_j + 1/q - 1/m_j) u_j,

a formula that stays valid for non-monotone chains such as the ones
produced by extra blow-ups.  The coefficient of u_j is <= 0 for
Hirzebruch-Jung data, vanishing exactly when e_1 = ... = e_j = 2, so mu
is never positive and vanishes precisely in the crepant case p = q - 1.
The coefficient mu equals the ADM-type mass of the metric, so these sums
decide its sign exactly.

Everything here is exact rational arithmetic; ``math.inf`` is the one
permitted non-rational level value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from cscglue.cfrac import approximant_chain

INFINITY = math.inf

Pair = tuple[int, int]


@dataclass(frozen=True)
class MonopoleData:
    """Levels and charge pairs defining a torus-symmetric ALE metric.

    Attributes
    ----------
    levels : tuple
        y_0 > y_1 > ... > y_{k+1} = 0; exact rationals except that y_0
        may be ``math.inf``.
    pairs : tuple of (int, int)
        The charges (a_j, b_j), one per level.
    chain : tuple of (int, int) or None
        The generating pairs (m_j, n_j), j = 0, ..., k+2, when the data
        derives from a fraction or a blow-up insertion; None otherwise.
    """

    levels: tuple
    pairs: tuple[Pair, ...]
    chain: tuple[Pair, ...] | None = None

    @property
    def k(self) -> int:
        return len(self.levels) - 2

    def pq(self) -> tuple[int, int]:
        """The closing recurrence pair (q, p) read off the chain."""
        if self.chain is None:
            raise ValueError("monopole data carries no generating chain")
        q, p = self.chain[-2]
        return p, q


@dataclass(frozen=True)
class LogCoefficients:
    """The pair (a, b) of the potential expansion and mu = a + b.

    ``per_term`` lists (coefficient_j, u_j) for j = 1, ..., k, where
    u_j = m_j (c_j - c_{j-1}); mu equals the sum of their products.
    """

    a: Fraction
    b: Fraction
    mu: Fraction
    per_term: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class MassVerdict:
    """Sign report for the mass of the metric attached to (p, q, u)."""

    mu: Fraction
    sign: int  # -1, 0, or +1
    crepant: bool
    coefficients: tuple[Fraction, ...]


def monopole_from_fraction(p: int, q: int, levels) -> MonopoleData:
    """Build monopole data for the resolution of C^2/Gamma_{p,q}.

    Parameters
    ----------
    p, q : int
        Coprime with 0 < p < q.
    levels : sequence
        k + 2 strictly decreasing values ending at exactly 0, where k is
        the digit count of the expansion of q/p.  The first entry may be
        ``math.inf``.
    """
    chain = approximant_chain(p, q)
    return monopole_from_chain(chain, levels)


def monopole_from_chain(chain, levels) -> MonopoleData:
    """Monopole data from an explicit (m_j, n_j) chain.

    The chain must start with (0, -1), (1, 0), end with (0, 1), keep
    m_j > 0 in between, and have unit determinant at every interior
    junction.  Monotonicity of the m_j is not required, so chains
    produced by :func:`blowup_insert` and the plane blow-up chain
    ``((0,-1), (1,0), (1,1), (0,1))`` are accepted.
    """
    chain = tuple((int(m), int(n)) for m, n in chain)
    _validate_chain(chain)
    levels = _validate_levels(levels, expected=len(chain) - 1)
    pairs = tuple(
        (chain[j][0] - chain[j + 1][0], chain[j][1] - chain[j + 1][1])
        for j in range(len(chain) - 1)
    )
    return MonopoleData(levels=levels, pairs=pairs, chain=chain)


def flat_monopole() -> MonopoleData:
    """The k = 0, y_0 = infinity datum giving the flat metric on C^2."""
    return monopole_from_chain(((0, -1), (1, 0), (0, 1)), (INFINITY, Fraction(0)))


def log_coeffs_from_levels(data: MonopoleData) -> LogCoefficients:
    """Exact (a, b, mu) from the level sums.

    Uses the telescoped closed forms for q a and q b quoted in the module
    docstring, with c_j = 1/y_j, c_{-1} = c_{k+1} = 0 and c_0 = 0 when
    y_0 is infinite.

    Raises
    ------
    ValueError
        If the data carries no generating chain.
    """
    if data.chain is None:
        raise ValueError("log coefficients need the generating chain")
    chain = data.chain
    k = data.k
    q, p = chain[-2]
    c = [_inverse_level(y) for y in data.levels[: k + 1]] + [Fraction(0)]
    c_prev = [Fraction(0)] + c[:-1]

    qa = sum((c[j] - c_prev[j]) * chain[j][0] for j in range(k + 2))
    qb = sum((c[j] - c_prev[j]) * (p * chain[j][0] - q * chain[j][1]) for j in range(k + 2))
    a = Fraction(qa, q)
    b = Fraction(qb, q)

    per_term = tuple(
        (_chain_coefficient(chain, j), chain[j][0] * (c[j] - c[j - 1]))
        for j in range(1, k + 1)
    )
    return LogCoefficients(a=a, b=b, mu=a + b, per_term=per_term)


def mu_from_u(p: int, q: int, u) -> LogCoefficients:
    """Exact mu for the (p, q) resolution from the parameters u_1..u_k.

    The split into a and b individually is fixed by the y_0 = infinity
    normalisation (c_0 = 0); mu itself does not depend on that choice.

    The Burns datum is admitted as (p, q) = (1, 1): the blow-up of the
    plane rather than of a singular quotient, with chain
    (0,-1), (1,0), (1,1), (0,1).  Its single coefficient is +1, the one
    case with positive log term.
    """
    chain = _chain_for(p, q)
    return mu_from_chain(chain, u)


def mu_from_chain(chain, u) -> LogCoefficients:
    """Exact mu for an explicit chain from positive parameters u.

    Parameters
    ----------
    chain : sequence of (int, int)
        As accepted by :func:`monopole_from_chain`.
    u : sequence
        k positive rationals, one per interior chain pair.
    """
    chain = tuple((int(m), int(n)) for m, n in chain)
    _validate_chain(chain)
    k = len(chain) - 3
    u = tuple(Fraction(x) for x in u)
    if len(u) != k:
        raise ValueError(f"expected {k} u-parameters, got {len(u)}")
    if any(x <= 0 for x in u):
        raise ValueError("all u_j must be positive")

    per_term = tuple((_chain_coefficient(chain, j), u[j - 1]) for j in range(1, k + 1))
    mu = sum((coeff * uj for coeff, uj in per_term), Fraction(0))

    # Recover (a, b) in the c_0 = 0 normalisation: c_k is the cumulative
    # sum of u_j / m_j and q a = sum(u_j) - q c_k.
    q, p = chain[-2]
    c_k = sum((u[j - 1] / chain[j][0] for j in range(1, k + 1)), Fraction(0))
    a = (sum(u, Fraction(0)) - q * c_k) / q
    return LogCoefficients(a=a, b=mu - a, mu=mu, per_term=per_term)


def mu_coefficient(p: int, q: int, j: int) -> Fraction:
    """The j-th coefficient p/q - n_j/m_j + 1/q - 1/m_j, 1 <= j <= k.

    For Hirzebruch-Jung data it is <= 0, vanishing exactly when
    e_1 = ... = e_j = 2.
    """
    chain = _chain_for(p, q)
    k = len(chain) - 3
    if not (1 <= j <= k):
        raise ValueError(f"index j={j} out of range 1..{k}")
    return _chain_coefficient(chain, j)


def blowup_insert(data: MonopoleData, position: int, level=None) -> MonopoleData:
    """Insert the extra interval created by blowing up at an endpoint.

    ``position`` names the endpoint y_j shared by the chain pairs j and
    j+1; the inserted interval receives the label
    (m_j + m_{j+1}, n_j + n_{j+1}).  Both new junctions have unit
    determinant, so the result is again smooth monopole data.  The new
    endpoint is placed at the midpoint of (y_{j+1}, y_j) unless ``level``
    is given.

    Valid positions are 0 <= j <= k with y_j finite; the endpoint
    y_{k+1} = 0 is the deleted asymptotic point and cannot be blown up.
    """
    if data.chain is None:
        raise ValueError("blow-up insertion needs the generating chain")
    k = data.k
    if not (0 <= position <= k):
        raise ValueError(f"position must be in 0..{k}, got {position}")
    y_j = data.levels[position]
    if y_j == INFINITY:
        raise ValueError("cannot insert at an infinite endpoint")
    if level is None:
        level = (Fraction(y_j) + Fraction(data.levels[position + 1])) / 2
    level = Fraction(level)
    if not (data.levels[position + 1] < level < y_j):
        raise ValueError(
            f"inserted level {level} must lie strictly between "
            f"{data.levels[position + 1]} and {y_j}"
        )

    m, n = data.chain[position]
    m2, n2 = data.chain[position + 1]
    new_chain = (
        data.chain[: position + 1]
        + ((m + m2, n + n2),)
        + data.chain[position + 1 :]
    )
    new_levels = data.levels[: position + 1] + (level,) + data.levels[position + 1 :]
    return monopole_from_chain(new_chain, new_levels)


def mass_verdict(p: int, q: int, u) -> MassVerdict:
    """Sign of the mass of the (p, q) metric for parameters u.

    The mass equals the log coefficient mu; for Hirzebruch-Jung data the
    sign is never positive and is zero exactly in the crepant case
    p = q - 1.  The Burns datum (1, 1) is the positive-mass exception.
    """
    coeffs = mu_from_u(p, q, u)
    mu = coeffs.mu
    sign = 0 if mu == 0 else (1 if mu > 0 else -1)
    return MassVerdict(
        mu=mu,
        sign=sign,
        crepant=(p == q - 1),
        coefficients=tuple(c for c, _ in coeffs.per_term),
    )


def _chain_for(p: int, q: int) -> tuple[Pair, ...]:
    if (p, q) == (1, 1):
        return ((0, -1), (1, 0), (1, 1), (0, 1))
    if not (0 < p < q):
        raise ValueError(f"need 0 < p < q (or the Burns datum (1, 1)), got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    return approximant_chain(p, q)


def _chain_coefficient(chain, j: int) -> Fraction:
    q, p = chain[-2]
    m, n = chain[j]
    return Fraction(p, q) - Fraction(n, m) + Fraction(1, q) - Fraction(1, m)


def _validate_chain(chain) -> None:
    if len(chain) < 3:
        raise ValueError("chain needs at least the three boundary pairs")
    if chain[0] != (0, -1) or chain[1] != (1, 0) or chain[-1] != (0, 1):
        raise ValueError(
            "chain must start (0,-1), (1,0) and end (0,1), got "
            f"{chain[0]}, {chain[1]}, ..., {chain[-1]}"
        )
    for j in range(1, len(chain) - 1):
        if chain[j][0] <= 0:
            raise ValueError(f"interior chain pair {chain[j]} must have m > 0")
    # Unit determinant at every junction except the closing one, whose
    # determinant is the group order q.
    for j in range(len(chain) - 2):
        (m0, n0), (m1, n1) = chain[j], chain[j + 1]
        if m0 * n1 - m1 * n0 != 1:
            raise ValueError(f"junction {j} has determinant {m0 * n1 - m1 * n0}, not 1")


def _validate_levels(levels, expected: int) -> tuple:
    out = []
    for i, y in enumerate(levels):
        if y == INFINITY:
            if i != 0:
                raise ValueError("only y_0 may be infinite")
            out.append(INFINITY)
        else:
            out.append(Fraction(y))
    if len(out) != expected:
        raise ValueError(f"expected {expected} levels, got {len(out)}")
    for a, b in zip(out, out[1:]):
        if not b < a:
            raise ValueError(f"levels must be strictly decreasing, got {levels}")
    if out[-1] != 0:
        raise ValueError(f"last level must be exactly 0, got {out[-1]}")
    return tuple(out)


def _inverse_level(y) -> Fraction:
    if y == INFINITY:
        return Fraction(0)
    return 1 / Fraction(y)
