"""Exceptional-curve chains over a parabolic point and their blow-downs.

A weight alpha = p/q in (0, 1) determines an iterated blow-up of the fiber
over its base point.  The resulting exceptional set is a linear chain of
rational curves with self-intersections

    -e_1, ..., -e_l,  -1,  -e'_m, ..., -e'_1

where e_1..e_l are the negative-continued-fraction digits of q/p and
e'_1..e'_m those of q/(q-p).  Contracting -1 curves repeatedly returns any
such chain to the original fiber, a single curve of self-intersection 0.
The blow-down is implemented independently of the chain construction and
acts as the combinatorial oracle for it.

Chains are plain tuples of integers, left to right.
"""

from __future__ import annotations

from fractions import Fraction

from cscglue.cfrac import hj_expand

Chain = tuple[int, ...]


def fiber_chain(alpha: Fraction) -> Chain:
    """Exceptional chain of the iterated blow-up encoded by a weight.

    Parameters
    ----------
    alpha : Fraction
        Weight in (0, 1).

    Returns
    -------
    tuple of int
        ``(-e_1, ..., -e_l, -1, -e'_m, ..., -e'_1)`` with e the digits
        for alpha = p/q and e' the digits for 1 - alpha.
    """
    p, q = _split_weight(alpha)
    left = hj_expand(p, q).digits
    right = hj_expand(q - p, q).digits
    return tuple(-e for e in left) + (-1,) + tuple(-e for e in reversed(right))


def blow_down_once(chain: Chain) -> Chain:
    """Contract the leftmost -1 curve in the chain.

    The -1 entry is removed and each of its one or two neighbours gains 1
    (they acquire the intersection with the contracted curve).

    Raises
    ------
    ValueError
        If no -1 entry is present, or the chain is the singleton (-1,)
        (contracting it would leave a point, not a curve).
    """
    chain = tuple(chain)
    if -1 not in chain:
        raise ValueError(f"no -1 curve to contract in {chain}")
    if len(chain) < 2:
        raise ValueError("cannot contract the singleton (-1,) chain")
    i = chain.index(-1)
    out = list(chain)
    del out[i]
    if i > 0:
        out[i - 1] += 1
    if i < len(out):
        out[i] += 1
    return tuple(out)


def blow_down_fully(chain: Chain) -> Chain:
    """Contract -1 curves until none remain.

    For any :func:`fiber_chain` output the result is exactly ``(0,)``, the
    original fiber.  Chains that contract to the singleton (-1,) raise,
    via :func:`blow_down_once`.
    """
    out = list(chain)
    while -1 in out:
        if len(out) < 2:
            raise ValueError("chain contracts to a point, not a curve")
        # Leftmost -1; entries to its left are not -1, and contraction
        # can only create a new -1 at the removed position or one slot
        # to the left, so scanning from the start stays correct.
        i = out.index(-1)
        del out[i]
        if i > 0:
            out[i - 1] += 1
        if i < len(out):
            out[i] += 1
    return tuple(out)


def blowup_count(alpha: Fraction) -> int:
    """Number of blow-ups over the fiber of a point with weight alpha."""
    p, q = _split_weight(alpha)
    l = len(hj_expand(p, q).digits)
    m = len(hj_expand(q - p, q).digits)
    return l + m


def singular_strings(alpha: Fraction) -> tuple[Chain, Chain]:
    """The two Hirzebruch-Jung strings on either side of the -1 curve.

    Contracting the middle of the fiber chain leaves two cyclic quotient
    singularities; the returned strings are their minimal resolutions,
    for Gamma_{p,q} and Gamma_{q-p,q} respectively.
    """
    p, q = _split_weight(alpha)
    left = tuple(-e for e in hj_expand(p, q).digits)
    right = tuple(-e for e in hj_expand(q - p, q).digits)
    return left, right


def format_chain(chain: Chain) -> str:
    """Render a chain the way the CLI prints it, e.g. ``-3 -1 -2 -2``."""
    return " ".join(str(c) for c in chain)


def _split_weight(alpha: Fraction) -> tuple[int, int]:
    alpha = Fraction(alpha)
    if not (0 < alpha < 1):
        raise ValueError(f"weight must lie in (0, 1), got {alpha}")
    return alpha.numerator, alpha.denominator
