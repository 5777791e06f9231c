"""Command-line front end.

One binary with subcommands::

    cscglue hj 5/7
    cscglue mass 2/3 --u 1,1
    cscglue blowup-insert 1/3 --position 1 --u 1,2
    cscglue stability fixtures/sphere_four_points.json
    cscglue pipeline fixtures/sphere_four_points.json
    cscglue metric-verify 1/3 --samples 200 --seed 7 --csv decay.csv

Surfaces are described by JSON documents (see :func:`parse_surface`);
fractions are always written as "p/q" strings so weights never pass
through floating point.  Every subcommand accepts ``--json`` for a
machine-readable mirror of the human report.

Exit codes: 0 success (pipeline: feasible), 2 malformed input,
3 infeasible or obstructed, 4 not applicable; metric-verify exits 1 if
any tolerance fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from cscglue import __version__
from cscglue.cfrac import hj_expand
from cscglue.gluing import GluingVerdict, existence_report
from cscglue.logmass import (
    INFINITY,
    blowup_insert,
    log_coeffs_from_levels,
    monopole_from_chain,
    monopole_from_fraction,
    mu_from_chain,
    mu_from_u,
)
from cscglue.parabolic import ParabolicSurface, SectionData, classify, is_sporadic
from cscglue.resolution import blowup_count, fiber_chain, format_chain, singular_strings
from cscglue.metricnum import default_levels, verify_metric

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_APPLICABLE = 4

VERDICT_EXIT = {
    GluingVerdict.FEASIBLE: EXIT_OK,
    GluingVerdict.FEASIBLE_EQUIVARIANT: EXIT_OK,
    GluingVerdict.INFEASIBLE: EXIT_INFEASIBLE,
    GluingVerdict.OBSTRUCTED: EXIT_INFEASIBLE,
    GluingVerdict.NOT_APPLICABLE: EXIT_NOT_APPLICABLE,
}


class InputError(Exception):
    """Malformed user input; maps to exit code 2."""


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cscglue",
        description="Hirzebruch-Jung combinatorics, ALE masses, parabolic "
        "stability and gluing feasibility for blown-up ruled surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"cscglue {__version__}")
    sub = parser.add_subparsers(required=True)

    p_hj = sub.add_parser("hj", help="continued fraction, chain and blow-up data of a weight")
    p_hj.add_argument("fraction", help='weight "p/q" in (0,1)')
    p_hj.add_argument("--json", action="store_true")
    p_hj.set_defaults(func=cmd_hj)

    p_mass = sub.add_parser("mass", help="exact log coefficient and mass sign")
    p_mass.add_argument("fraction", help='"p/q" with 0 < p < q, or "1/1" for the plane blow-up')
    p_mass.add_argument("--u", help="comma-separated positive rationals u_1..u_k")
    p_mass.add_argument("--levels", help="comma-separated decreasing levels ending in 0 (first may be inf)")
    p_mass.add_argument("--json", action="store_true")
    p_mass.set_defaults(func=cmd_mass)

    p_ins = sub.add_parser("blowup-insert", help="insert a blow-up interval into a chain")
    p_ins.add_argument("fraction", help='"p/q" base data')
    p_ins.add_argument("--position", type=int, required=True, help="endpoint index y_j, 0 <= j <= k")
    p_ins.add_argument("--u", help="u parameters for the inserted chain (k+1 entries)")
    p_ins.add_argument("--levels", help="levels for the base chain before insertion")
    p_ins.add_argument("--json", action="store_true")
    p_ins.set_defaults(func=cmd_blowup_insert)

    p_stab = sub.add_parser("stability", help="slope table and polystability verdict")
    p_stab.add_argument("document", help="surface document (JSON)")
    p_stab.add_argument("--json", action="store_true")
    p_stab.set_defaults(func=cmd_stability)

    p_pipe = sub.add_parser("pipeline", help="full existence pipeline for a surface document")
    p_pipe.add_argument("document", help="surface document (JSON)")
    p_pipe.add_argument("--json", action="store_true")
    p_pipe.set_defaults(func=cmd_pipeline)

    p_ver = sub.add_parser("metric-verify", help="numerical verification battery for (p, q)")
    p_ver.add_argument("fraction", help='"p/q" with 0 < p < q')
    p_ver.add_argument("--levels", help="comma-separated decreasing levels ending in 0")
    p_ver.add_argument("--samples", type=int, default=200)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--csv", help="write the (r, residual) decay series here")
    p_ver.add_argument("--fit-csv", help="write the (r, coeff_a, coeff_b) series here")
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=cmd_metric_verify)
    return parser


# ---------------------------------------------------------------------------
# parsing helpers


def parse_fraction(text: str, allow_burns: bool = False) -> tuple[int, int]:
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse fraction {text!r}: {exc}") from None
    p, q = frac.numerator, frac.denominator
    if allow_burns and (p, q) == (1, 1):
        return p, q
    if not (0 < p < q):
        raise InputError(f"fraction must satisfy 0 < p < q, got {text!r}")
    return p, q


def parse_rational_list(text: str):
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if item in ("inf", "infinity"):
            out.append(INFINITY)
            continue
        try:
            if "/" in item or "." not in item:
                out.append(Fraction(item))
            else:
                # Floats are accepted but converted with a warning: the
                # conversion is exact binary, not decimal.
                print(
                    f"warning: converting floating-point level {item!r} to an "
                    "exact fraction; pass p/q strings to avoid surprises",
                    file=sys.stderr,
                )
                out.append(Fraction(float(item)).limit_denominator(10**12))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {item!r}: {exc}") from None
    if not out:
        raise InputError("empty rational list")
    return out


def parse_coord(text: str):
    parts = str(text).split(":")
    if len(parts) != 2:
        raise InputError(f"fiber coordinate must look like 'a:b', got {text!r}")
    try:
        return (Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse coordinate {text!r}: {exc}") from None


def parse_surface(doc: dict) -> tuple[ParabolicSurface, tuple]:
    """Build a surface and its extra points from a JSON document."""
    try:
        genus = int(doc.get("genus", 0))
        model = doc.get("model", "trivial-p1")
        points = tuple(str(p) for p in doc.get("points", ()))
        weights = tuple(Fraction(str(w)) for w in doc.get("weights", ()))
        raw_inc = doc.get("incidence", ())
        if model == "trivial-p1":
            incidence = tuple(parse_coord(i) for i in raw_inc)
        else:
            incidence = tuple(str(i) for i in raw_inc)
        sections = tuple(
            SectionData(
                id=str(s["id"]),
                self_intersection=int(s.get("self_intersection", 0)),
                contains=frozenset(str(x) for x in s.get("contains", ())),
                disjoint_from=frozenset(str(x) for x in s.get("disjoint_from", ())),
            )
            for s in doc.get("sections", ())
        )
        extra = tuple(parse_coord(c) for c in doc.get("extra_points", ()))
        surface = ParabolicSurface(
            genus=genus,
            points=points,
            weights=weights,
            incidence=incidence,
            model=model,
            sections=sections,
        )
    except InputError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad surface document: {exc}") from None
    # A marked point listed in the contains of one section must not have
    # its incidence pointing at a different one: the two declarations
    # would place Q_j on two sections at once.
    if model == "sections":
        for sec in sections:
            for j, inc in enumerate(incidence):
                if points[j] in sec.contains and inc != sec.id:
                    raise InputError(
                        f"point {points[j]} has incidence {inc} but is listed "
                        f"in contains of section {sec.id}"
                    )
    return surface, extra


def serialize_surface(surface: ParabolicSurface, extra=()) -> dict:
    doc = {
        "genus": surface.genus,
        "model": surface.model,
        "points": list(surface.points),
        "weights": [str(w) for w in surface.weights],
    }
    if surface.model == "trivial-p1":
        doc["incidence"] = [f"{u}:{v}" for u, v in surface.incidence]
    else:
        doc["incidence"] = list(surface.incidence)
    if surface.sections:
        doc["sections"] = [
            {
                "id": s.id,
                "self_intersection": s.self_intersection,
                "contains": sorted(s.contains),
                "disjoint_from": sorted(s.disjoint_from),
            }
            for s in surface.sections
        ]
    if extra:
        doc["extra_points"] = [f"{u}:{v}" for u, v in extra]
    return doc


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_hj(args) -> int:
    p, q = parse_fraction(args.fraction)
    exp = hj_expand(p, q)
    dual = hj_expand(q - p, q)
    chain = fiber_chain(Fraction(p, q))
    dual_chain = fiber_chain(Fraction(q - p, q))
    left, right = singular_strings(Fraction(p, q))
    payload = {
        "version": __version__,
        "fraction": f"{p}/{q}",
        "digits": list(exp.digits),
        "dual_digits": list(dual.digits),
        "approximants": [list(mn) for mn in exp.approximants],
        "fiber_chain": format_chain(chain),
        "dual_fiber_chain": format_chain(dual_chain),
        "singular_strings": [format_chain(left), format_chain(right)],
        "blowup_count": blowup_count(Fraction(p, q)),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"weight {p}/{q}")
    print(f"  digits of {q}/{p}:        {' '.join(map(str, exp.digits))}")
    print(f"  digits of {q}/{q - p}:        {' '.join(map(str, dual.digits))}")
    print(f"  approximants (m, n):  {' '.join(str(t) for t in exp.approximants)}")
    print(f"  fiber chain:          {payload['fiber_chain']}")
    print(f"  dual fiber chain:     {payload['dual_fiber_chain']}")
    print(f"  singular strings:     {payload['singular_strings'][0]}  |  {payload['singular_strings'][1]}")
    print(f"  blow-ups over fiber:  {payload['blowup_count']}")
    return EXIT_OK


def _coeffs_payload(coeffs) -> dict:
    return {
        "a": str(coeffs.a),
        "b": str(coeffs.b),
        "mu": str(coeffs.mu),
        "mu_decimal": float(coeffs.mu),
        "per_term": [
            {"coefficient": str(c), "u": str(u)} for c, u in coeffs.per_term
        ],
    }


def cmd_mass(args) -> int:
    p, q = parse_fraction(args.fraction, allow_burns=True)
    if bool(args.u) == bool(args.levels):
        raise InputError("pass exactly one of --u or --levels")
    if args.u:
        u = parse_rational_list(args.u)
        if any(x == INFINITY for x in u):
            raise InputError("u parameters must be finite")
        try:
            coeffs = mu_from_u(p, q, u)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        levels = parse_rational_list(args.levels)
        try:
            if (p, q) == (1, 1):
                data = monopole_from_chain(((0, -1), (1, 0), (1, 1), (0, 1)), levels)
            else:
                data = monopole_from_fraction(p, q, levels)
            coeffs = log_coeffs_from_levels(data)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    mu = coeffs.mu
    sign = 0 if mu == 0 else (1 if mu > 0 else -1)
    crepant = p == q - 1
    payload = {
        "version": __version__,
        "fraction": f"{p}/{q}",
        **_coeffs_payload(coeffs),
        "sign": {1: "positive", 0: "zero", -1: "negative"}[sign],
        "crepant": crepant,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"fraction {p}/{q}")
    print(f"  a  = {coeffs.a}  ({float(coeffs.a):.6g})")
    print(f"  b  = {coeffs.b}  ({float(coeffs.b):.6g})")
    print(f"  mu = {coeffs.mu}  ({float(coeffs.mu):.6g})")
    for i, (c, u) in enumerate(coeffs.per_term, start=1):
        print(f"  term {i}: coefficient {c}, u = {u}")
    print(f"  sign: {payload['sign']}   crepant: {'yes' if crepant else 'no'}")
    return EXIT_OK


def cmd_blowup_insert(args) -> int:
    p, q = parse_fraction(args.fraction)
    k = len(hj_expand(p, q).digits)
    levels = parse_rational_list(args.levels) if args.levels else default_levels(k)
    try:
        data = monopole_from_fraction(p, q, levels)
        inserted = blowup_insert(data, args.position)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {
        "version": __version__,
        "fraction": f"{p}/{q}",
        "position": args.position,
        "chain": [list(mn) for mn in inserted.chain],
        "levels": [str(y) for y in inserted.levels],
        "pairs": [list(ab) for ab in inserted.pairs],
    }
    if args.u:
        u = parse_rational_list(args.u)
        try:
            coeffs = mu_from_chain(inserted.chain, u)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        payload.update(_coeffs_payload(coeffs))
    else:
        coeffs = log_coeffs_from_levels(inserted)
        payload.update(_coeffs_payload(coeffs))
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"insert at endpoint y_{args.position} of the {p}/{q} chain")
    print(f"  chain (m, n): {' '.join(str(t) for t in inserted.chain)}")
    print(f"  levels:       {' > '.join(payload['levels'])}")
    print(f"  mu = {coeffs.mu}  ({float(coeffs.mu):.6g})")
    for i, (c, u) in enumerate(coeffs.per_term, start=1):
        print(f"  term {i}: coefficient {c}, u = {u}")
    return EXIT_OK


def cmd_stability(args) -> int:
    surface, _ = parse_surface(load_document(args.document))
    try:
        verdict = classify(surface)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sporadic = is_sporadic(surface, verdict)
    payload = {
        "version": __version__,
        "verdict": verdict.kind.value,
        "min_slope": str(verdict.min_slope),
        "relative_to_supplied_sections": verdict.relative_to_supplied,
        "sporadic": sporadic,
        "slopes": [
            {"section": c.id, "slope": str(c.slope), "contains": sorted(
                surface.points[j] for j in c.contains)}
            for c in verdict.table
        ],
        "witness_pair": [c.id for c in verdict.pair] if verdict.pair else None,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"verdict: {verdict.kind.value}" + (
        " (relative to supplied sections)" if verdict.relative_to_supplied else ""))
    print(f"minimum slope: {verdict.min_slope}")
    if verdict.pair:
        print(f"slope-zero disjoint pair: {verdict.pair[0].id}, {verdict.pair[1].id}")
    print(f"sporadic: {'yes' if sporadic else 'no'}")
    print("slopes:")
    for c in verdict.table:
        pts = ", ".join(sorted(surface.points[j] for j in c.contains)) or "-"
        print(f"  {c.id:<22} slope {str(c.slope):<8} through {pts}")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    surface, extra = parse_surface(load_document(args.document))
    try:
        report = existence_report(surface, extra)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {
        "version": __version__,
        "verdict": report.verdict.value,
        "stability": report.stability.kind.value,
        "sporadic": report.sporadic,
        "good_orbifold": report.good,
        "chi_orb": str(report.chi_orb),
        "sfk_possible": report.sfk_possible,
        "orbifold_orders": list(report.orbifold.orders),
        "case": report.case.value if report.case else None,
        "dim_v0": report.case.dim_v0 if report.case else None,
        "blowup_total": report.blowup_total,
        "description": report.description,
        "special_configuration_required": report.special_configuration_required,
        "notes": list(report.notes),
        "resolution_strings": [
            {"point": pt, "strings": [format_chain(a), format_chain(b)]}
            for pt, (a, b) in report.resolution_strings
        ],
    }
    if report.gluing is not None:
        payload["gluing"] = {
            "matrix": [[str(x) for x in row] for row in report.gluing.rows],
            "columns": list(report.gluing.col_labels),
            "c1": report.gluing.c1,
            "c2": report.gluing.c2,
            "positive_kernel": report.gluing.positive_kernel,
            "kernel_witness": [str(x) for x in report.gluing.kernel_witness]
            if report.gluing.kernel_witness
            else None,
        }
    if args.json:
        print(json.dumps(payload, indent=2))
        return VERDICT_EXIT[report.verdict]
    print(f"verdict: {report.verdict.value}")
    print(f"stability: {report.stability.kind.value}"
          + (" (sporadic)" if report.sporadic else ""))
    print(f"orbifold: genus {report.orbifold.genus}, orders {list(report.orbifold.orders)},"
          f" good: {'yes' if report.good else 'no'}")
    print(f"chi_orb = {report.chi_orb}; SFK possible: {'yes' if report.sfk_possible else 'no'}")
    if report.case:
        print(f"case: {report.case.value} (dim V0 = {report.case.dim_v0})")
    print(f"blow-ups: {report.blowup_total}; resulting surface: {report.description}")
    for pt, (a, b) in report.resolution_strings:
        print(f"  {pt}: strings {format_chain(a)}  |  {format_chain(b)}")
    if report.gluing is not None and report.gluing.ncols:
        row = ", ".join(str(x) for x in report.gluing.rows[0]) if report.gluing.rows else ""
        print(f"gluing matrix: [{row}]")
        print(f"  columns: {', '.join(report.gluing.col_labels)}")
        print(f"  c1 = {report.gluing.c1}, c2 = {report.gluing.c2},"
              f" positive kernel: {'yes' if report.gluing.positive_kernel else 'no'}")
        if report.gluing.kernel_witness:
            print(f"  witness: ({', '.join(str(x) for x in report.gluing.kernel_witness)})")
    for note in report.notes:
        print(f"note: {note}")
    return VERDICT_EXIT[report.verdict]


def cmd_metric_verify(args) -> int:
    p, q = parse_fraction(args.fraction)
    levels = parse_rational_list(args.levels) if args.levels else None
    if args.samples < 10:
        raise InputError("--samples must be at least 10")
    try:
        report = verify_metric(p, q, levels=levels, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["r", "residual"])
            writer.writerows(report.decay_series)
    if args.fit_csv:
        with open(args.fit_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["r", "coeff_a", "coeff_b"])
            writer.writerows(report.fit_series)
    payload = {
        "version": __version__,
        "fraction": f"{p}/{q}",
        "levels": [str(y) for y in report.levels],
        "seed": report.seed,
        "samples": report.samples,
        "exact": {"a": str(report.exact.a), "b": str(report.exact.b), "mu": str(report.exact.mu)},
        "checks": [
            {
                "name": c.name,
                "value": c.value,
                "tolerance": c.tolerance,
                "passed": c.passed,
                "detail": c.detail,
            }
            for c in report.checks
        ],
        "passed": report.passed,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK if report.passed else 1
    print(f"metric verification for {p}/{q}   (version {__version__}, seed {report.seed},"
          f" samples {report.samples})")
    print(f"levels: {' > '.join(str(y) for y in report.levels)}")
    print(f"exact a = {report.exact.a}, b = {report.exact.b}, mu = {report.exact.mu}")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        detail = f"   [{c.detail}]" if c.detail else ""
        print(f"  {status}  {c.name:<24} value {c.value:.3e}  tolerance {c.tolerance:.3e}{detail}")
    print("all checks passed" if report.passed else "SOME CHECKS FAILED")
    return EXIT_OK if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
