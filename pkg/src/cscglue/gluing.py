"""Orbifold bases, the gluing matrix, and the existence pipeline.

A parabolic ruled surface determines an orbifold Riemann surface: one
orbifold point of order q_j (the weight denominator) per parabolic point.
The base is *good* (admits a constant-curvature uniformisation) unless it
is the teardrop (sphere, one orbifold point) or the sphere with two
orbifold points of distinct orders, and its orbifold Euler characteristic

    chi_orb = chi_top - sum_j (1 - 1/q_j)

fixes the sign of the uniformising curvature; chi_orb < 0 is what allows
a scalar-flat representative.

For a strictly polystable surface, the quotient model carries exactly one
holomorphic kernel function phi beyond the constants; it equals +1 at one
family of fixed points and -1 at the other.  Each parabolic point of
weight p_j/q_j produces two cyclic quotient singularities in the quotient
model, Gamma_{p_j, q_j} on the section containing Q_j and
Gamma_{q_j - p_j, q_j} on the opposite one.  A singularity enters the
gluing matrix with entry -phi(x) iff its local parameters (p, q) satisfy
p != q - 1 (the crepant strings contribute no log term and drop out);
extra blow-up points y enter with entry +phi(y), where phi([u : v]) =
(|u|^2 - |v|^2)/(|u|^2 + |v|^2).

Feasibility of the glued constant-scalar-curvature metric asks for

    c_1 = rank M = dim V_0    and    c_2 != 0,

where c_2 counts the dimension of ker M when a strictly positive kernel
vector exists and is zero otherwise.  Both are decided exactly.  The
positive kernel vector is a balancing condition: its entries weight the
chosen points so that the configuration is balanced against the kernel
vector fields, in the spirit of a zero of a moment map.

The sign attached to each of the two sections is a convention (the
verdict is invariant under swapping it; only the witness labelling
changes): the section carrying the marked point gets the Gamma_{p,q}
model and the +1 side is the first section of the witness pair.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from cscglue.exactlp import positive_kernel_vector, rational_rank
from cscglue.parabolic import (
    ParabolicSurface,
    StabilityKind,
    StabilityVerdict,
    classify,
    is_sporadic,
    normalize_coord,
)
from cscglue.resolution import blowup_count, singular_strings


class FixType(enum.Enum):
    """Fixed-point structure of the fiberwise rotation group."""

    NO_FIXED_POINT = "no-fixed-point"
    TWO_FIXED_POINTS = "two-fixed-points"
    TRIVIAL = "trivial"
    QUOTIENT_SPHERE_BASE = "quotient-sphere-base"

    @property
    def dim_v0(self) -> int:
        return {
            FixType.NO_FIXED_POINT: 0,
            FixType.TWO_FIXED_POINTS: 1,
            FixType.TRIVIAL: 3,
            FixType.QUOTIENT_SPHERE_BASE: 2,
        }[self]


class GluingVerdict(enum.Enum):
    FEASIBLE = "feasible"
    FEASIBLE_EQUIVARIANT = "feasible-equivariant"
    OBSTRUCTED = "obstructed"
    INFEASIBLE = "infeasible"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class OrbifoldSurface:
    """A closed orientable orbifold Riemann surface."""

    genus: int
    orders: tuple[int, ...]

    def __post_init__(self):
        for q in self.orders:
            if q < 2:
                raise ValueError(f"orbifold orders must be >= 2, got {q}")


@dataclass(frozen=True)
class RotationSet:
    """Images of the puncture loops under a fiberwise rotation action.

    Either symbolic (rotations by 2 pi alpha_j about one common axis,
    each with a sign selecting the pole) or explicit (axis vectors with
    angles in radians).  Symbolic data never touches floating point.
    """

    symbolic: tuple[tuple[Fraction, int], ...] | None = None
    explicit: tuple[tuple[tuple[float, float, float], float], ...] | None = None

    @staticmethod
    def common_axis(alphas_signs) -> "RotationSet":
        sym = tuple((Fraction(a), int(s)) for a, s in alphas_signs)
        for a, s in sym:
            if not (0 < a < 1):
                raise ValueError(f"symbolic angle fraction {a} outside (0, 1)")
            if s not in (-1, 1):
                raise ValueError(f"sign must be +-1, got {s}")
        return RotationSet(symbolic=sym)

    @staticmethod
    def from_axes(entries) -> "RotationSet":
        return RotationSet(explicit=tuple((tuple(map(float, ax)), float(th)) for ax, th in entries))


@dataclass(frozen=True)
class GluingReport:
    """Exact feasibility data for the gluing matrix."""

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int
    col_labels: tuple[str, ...]
    c1: int
    c2: int
    positive_kernel: bool
    kernel_witness: tuple[Fraction, ...] | None
    dim_v0: int
    verdict: GluingVerdict
    case: FixType | None = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class PipelineReport:
    """End-to-end existence report for a parabolic ruled surface."""

    stability: StabilityVerdict
    orbifold: OrbifoldSurface
    good: bool
    chi_orb: Fraction
    sfk_possible: bool
    sporadic: bool
    case: FixType | None
    gluing: GluingReport | None
    verdict: GluingVerdict
    blowup_total: int
    description: str
    resolution_strings: tuple
    special_configuration_required: bool
    notes: tuple[str, ...]


def orbifold_from_parabolic(surface: ParabolicSurface) -> OrbifoldSurface:
    """Orbifold base with one point of order q_j per parabolic weight p_j/q_j."""
    return OrbifoldSurface(
        genus=surface.genus,
        orders=tuple(w.denominator for w in surface.weights),
    )


def chi_orb(orb: OrbifoldSurface) -> Fraction:
    """Orbifold Euler characteristic 2 - 2g - sum(1 - 1/q_j), exact."""
    chi = Fraction(2 - 2 * orb.genus)
    for q in orb.orders:
        chi -= 1 - Fraction(1, q)
    return chi


def is_good(orb: OrbifoldSurface) -> bool:
    """False exactly for the teardrop and the two-distinct-order sphere."""
    if orb.genus != 0:
        return True
    if len(orb.orders) == 1:
        return False
    if len(orb.orders) == 2 and orb.orders[0] != orb.orders[1]:
        return False
    return True


AXIS_TOLERANCE = 1e-9


def classify_fixed_points(rotations: RotationSet, base: OrbifoldSurface | None = None) -> FixType:
    """Fixed-point case of the rotation action, with its dim V_0.

    The two-equal-order sphere base is special: the base itself has a
    rotation field, dim V_0 = 2, and the equivariant branch applies
    regardless of the rotation data.  Otherwise: trivial data gives
    dim V_0 = 3, a common axis gives two fixed points and dim V_0 = 1,
    and two distinct axes leave nothing fixed.
    """
    if base is not None and _is_two_equal_order_sphere(base):
        return FixType.QUOTIENT_SPHERE_BASE
    if rotations.symbolic is not None:
        if not rotations.symbolic:
            return FixType.TRIVIAL
        return FixType.TWO_FIXED_POINTS
    entries = rotations.explicit or ()
    axes = []
    for axis, angle in entries:
        norm = sum(x * x for x in axis) ** 0.5
        if norm == 0:
            raise ValueError("rotation axis must be a nonzero vector")
        if abs(_mod_angle(angle)) <= AXIS_TOLERANCE:
            continue  # identity rotation
        axes.append(tuple(x / norm for x in axis))
    if not axes:
        return FixType.TRIVIAL
    first = axes[0]
    for ax in axes[1:]:
        cross = (
            first[1] * ax[2] - first[2] * ax[1],
            first[2] * ax[0] - first[0] * ax[2],
            first[0] * ax[1] - first[1] * ax[0],
        )
        if sum(c * c for c in cross) ** 0.5 > AXIS_TOLERANCE:
            return FixType.NO_FIXED_POINT
    return FixType.TWO_FIXED_POINTS


def rotation_data(surface: ParabolicSurface, verdict: StabilityVerdict) -> RotationSet:
    """The fiberwise rotation set a strictly polystable surface induces.

    Each puncture loop acts by a rotation through 2 pi alpha_j about the
    axis fixed by the two witness sections; the sign records which
    section carries the marked point (which pole the rotation favours).
    """
    if verdict.kind is not StabilityKind.STRICTLY_POLYSTABLE or verdict.pair is None:
        raise ValueError("rotation data requires a strictly polystable verdict")
    s1, _ = verdict.pair
    return RotationSet.common_axis(
        (w, 1 if j in s1.contains else -1) for j, w in enumerate(surface.weights)
    )


def phi_value(coord) -> Fraction:
    """The kernel function (|u|^2 - |v|^2)/(|u|^2 + |v|^2) at [u : v]."""
    u, v = normalize_coord(*coord)
    return Fraction(u * u - v * v, u * u + v * v)


def gluing_matrix(
    surface: ParabolicSurface,
    verdict: StabilityVerdict,
    extra_points=(),
):
    """Single-row gluing matrix for a strictly polystable surface.

    Returns ``(row, labels)``.  For each marked point, the singularity on
    the section containing it is Gamma_{p_j, q_j} and contributes -phi of
    its side; the opposite singularity is Gamma_{q_j - p_j, q_j}.  A
    singularity is included iff its local p differs from q - 1.  Extra
    points contribute +phi of their fiber position.
    """
    if verdict.kind is not StabilityKind.STRICTLY_POLYSTABLE or verdict.pair is None:
        raise ValueError("gluing matrix requires a strictly polystable verdict")
    s1, s2 = verdict.pair
    entries: list[Fraction] = []
    labels: list[str] = []
    for j, w in enumerate(surface.weights):
        p, q = w.numerator, w.denominator
        if j in s1.contains:
            on_side, off_side = +1, -1
        elif j in s2.contains:
            on_side, off_side = -1, +1
        else:
            raise ValueError(
                f"marked point {surface.points[j]} lies on neither witness section"
            )
        # Singularity on the section through Q_j: Gamma_{p, q}.
        if p != q - 1:
            entries.append(Fraction(-on_side))
            labels.append(f"{surface.points[j]}:on-section G({p},{q})")
        # Opposite singularity: Gamma_{q-p, q}.
        if q - p != q - 1:
            entries.append(Fraction(-off_side))
            labels.append(f"{surface.points[j]}:off-section G({q - p},{q})")
    for i, coord in enumerate(extra_points):
        entries.append(phi_value(coord))
        labels.append(f"extra:{_coord_label(coord)}")
    return tuple(entries), tuple(labels)


def feasibility(rows, ncols: int, dim_v0: int, case=None, col_labels=()) -> GluingReport:
    """Exact rank / positive-kernel verdict for a gluing matrix.

    * empty matrix (no columns) with dim V_0 > 0: obstructed (no log
      terms are available to balance the kernel functions);
    * no rows (dim V_0 = 0): nothing to balance, feasible;
    * otherwise feasible iff rank equals dim V_0 and the kernel meets
      the open positive cone.

    c_2 is reported as dim ker M when a strictly positive kernel vector
    exists and 0 otherwise: a linear subspace meeting an open cone meets
    it in full dimension, and only c_2 != 0 is ever consumed.
    """
    rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    notes = []
    if ncols == 0:
        if dim_v0 > 0:
            notes.append(
                "empty matrix: every contributing singularity is crepant and "
                "there are no extra points, so the kernel functions cannot be "
                "balanced at this order"
            )
            verdict = GluingVerdict.OBSTRUCTED
        else:
            verdict = GluingVerdict.FEASIBLE
        return GluingReport(
            rows=rows,
            ncols=0,
            col_labels=tuple(col_labels),
            c1=0,
            c2=0,
            positive_kernel=dim_v0 == 0,
            kernel_witness=None,
            dim_v0=dim_v0,
            verdict=verdict,
            case=case,
            notes=tuple(notes),
        )
    c1 = rational_rank(rows)
    witness = positive_kernel_vector(rows, ncols)
    positive = witness is not None
    c2 = ncols - c1 if positive else 0
    if c1 == dim_v0 and positive:
        verdict = GluingVerdict.FEASIBLE
    else:
        verdict = GluingVerdict.INFEASIBLE
        if c1 != dim_v0:
            notes.append(f"rank {c1} does not match dim V_0 = {dim_v0}")
        if not positive:
            notes.append("kernel contains no strictly positive vector")
    return GluingReport(
        rows=rows,
        ncols=ncols,
        col_labels=tuple(col_labels),
        c1=c1,
        c2=c2,
        positive_kernel=positive,
        kernel_witness=witness,
        dim_v0=dim_v0,
        verdict=verdict,
        case=case,
        notes=tuple(notes),
    )


def existence_report(surface: ParabolicSurface, extra_points=()) -> PipelineReport:
    """Run the full decision pipeline for one parabolic ruled surface.

    Steps: stability classification, orbifold goodness and chi_orb, case
    selection, gluing matrix and exact feasibility.  Verdicts:

    * NOT_APPLICABLE: bad orbifold base, or the structure is not
      polystable (the existence theorem has no hypothesis to offer);
    * FEASIBLE: stable (no kernel functions), or strictly polystable
      with matching rank and a positive kernel vector;
    * FEASIBLE_EQUIVARIANT: strictly polystable over the two-equal-order
      sphere, where the involution trick removes the kernel;
    * INFEASIBLE / OBSTRUCTED: the matrix check fails; for sporadic
      structures this is expected and flagged (existence is conjectured
      but not provided by this construction).
    """
    extra_points = tuple(normalize_coord(*c) for c in extra_points)
    verdict = classify(surface)
    orb = orbifold_from_parabolic(surface)
    good = is_good(orb)
    chi = chi_orb(orb)
    sfk = chi < 0
    sporadic = is_sporadic(surface, verdict)
    blow_total = sum(blowup_count(w) for w in surface.weights)
    strings = tuple(
        (surface.points[j], singular_strings(w)) for j, w in enumerate(surface.weights)
    )
    description = _describe(surface, blow_total)
    notes: list[str] = []
    special = False
    case: FixType | None = None
    gluing: GluingReport | None = None

    if not good:
        final = GluingVerdict.NOT_APPLICABLE
        notes.append(
            "orbifold base is not good (teardrop or two points of distinct "
            "orders); no uniformising metric exists"
        )
    elif verdict.kind in (StabilityKind.UNSTABLE, StabilityKind.SEMISTABLE_NOT_POLYSTABLE):
        final = GluingVerdict.NOT_APPLICABLE
        notes.append(f"parabolic structure is {verdict.kind.value}; polystability required")
    elif surface.n == 0:
        # Trivial parabolic structure: the minimal surface is already
        # smooth and carries a product metric of constant scalar
        # curvature.  Extra blow-ups need special point configurations.
        case = FixType.TRIVIAL
        if extra_points:
            special = True
            final = GluingVerdict.OBSTRUCTED
            notes.append(
                "trivial parabolic structure with extra blow-up points: "
                "special configurations required; not certified here"
            )
        else:
            final = GluingVerdict.FEASIBLE
            notes.append("no blow-ups: the minimal ruled surface keeps its product metric")
    elif verdict.kind is StabilityKind.STABLE:
        case = FixType.NO_FIXED_POINT
        gluing = feasibility((), ncols=len(extra_points), dim_v0=0, case=case)
        final = GluingVerdict.FEASIBLE
        notes.append("stable: no holomorphic vector fields, gluing is unobstructed")
    elif _is_two_equal_order_sphere(orb):
        case = FixType.QUOTIENT_SPHERE_BASE
        notes.append(
            "base is the sphere with two equal-order points: dim V_0 = 2 "
            "(two independent holomorphic vector fields, toric symmetry); "
            "the involution-equivariant construction applies"
        )
        if extra_points and not _z2_invariant(extra_points):
            special = True
            final = GluingVerdict.OBSTRUCTED
            notes.append(
                "extra points are not invariant under [u:v] -> [v:u]: "
                "special configurations required; not certified here"
            )
        else:
            if extra_points:
                notes.append(
                    "extra fiber positions are involution-invariant; base "
                    "positions must be chosen symmetrically as well"
                )
            final = GluingVerdict.FEASIBLE_EQUIVARIANT
    else:
        case = FixType.TWO_FIXED_POINTS
        row, labels = gluing_matrix(surface, verdict, extra_points)
        gluing = feasibility((row,) if row else (), ncols=len(row), dim_v0=1, case=case, col_labels=labels)
        final = gluing.verdict
        if sporadic and final in (GluingVerdict.INFEASIBLE, GluingVerdict.OBSTRUCTED):
            notes.append(
                "sporadic weight pattern: the matrix obstruction is expected; "
                "existence of the metric is conjectured but not provided by "
                "this construction"
            )

    return PipelineReport(
        stability=verdict,
        orbifold=orb,
        good=good,
        chi_orb=chi,
        sfk_possible=sfk,
        sporadic=sporadic,
        case=case,
        gluing=gluing,
        verdict=final,
        blowup_total=blow_total,
        description=description,
        resolution_strings=strings,
        special_configuration_required=special,
        notes=tuple(notes),
    )


def _is_two_equal_order_sphere(orb: OrbifoldSurface) -> bool:
    return (
        orb.genus == 0
        and len(orb.orders) == 2
        and orb.orders[0] == orb.orders[1]
    )


def _z2_invariant(coords) -> bool:
    """Is the multiset of fiber positions invariant under [u:v] -> [v:u]?"""
    normalized = [normalize_coord(*c) for c in coords]
    swapped = [normalize_coord(c[1], c[0]) for c in coords]
    return sorted(normalized) == sorted(swapped)


def _mod_angle(angle: float) -> float:
    two_pi = 2 * math.pi
    a = angle % two_pi
    return min(a, two_pi - a)


def _describe(surface: ParabolicSurface, blow_total: int) -> str:
    if surface.genus == 0 and surface.model == "trivial-p1":
        if blow_total == 0:
            return "P1 x P1 (no blow-ups)"
        return f"CP^2 blown up at {blow_total + 1} points"
    base = f"genus-{surface.genus} ruled surface"
    if blow_total == 0:
        return base
    return f"{base} blown up {blow_total} times"


def _coord_label(coord) -> str:
    u, v = coord
    return f"[{u}:{v}]"
