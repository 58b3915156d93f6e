"""Batch command-line surface.

Every command validates its inputs, runs one computation, and emits a
deterministic report: JSON (schema ``hecke-covers/1``, keys sorted, rationals
as num/den strings), CSV, or a human-readable table.  Exit codes: 0 success,
2 validation failure, 3 convergence failure or an enumeration cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .affine_weyl import enumerate_ball
from .cover_datum import (
    CoverDatum,
    build_cover,
    center_group,
    heart_center_group,
    is_oasitic,
    oasitic_condition_text,
)
from .formal_degree import (
    DivergentSeriesError,
    canonical_measure_constant,
    character_series,
    degree_with_canonical_measure,
    formal_degree_inverse,
)
from .hecke_algebra import NotOasiticError, one_dimensional_characters
from .root_datum import CartanSpec, WeylOrderCapExceeded, build_root_datum
from .whittaker import whittaker_reports

SCHEMA = "hecke-covers/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTE = 3


class ValidationFailure(Exception):
    pass


class ComputeFailure(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _rational(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationFailure(f"cannot parse rational {text!r}") from exc


def _cover_from_args(args) -> CoverDatum:
    try:
        spec = CartanSpec(args.type, args.rank)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    if args.n < 1:
        raise ValidationFailure("n must be a positive integer")
    q_short = getattr(args, "q_short", 1)
    if q_short < 1:
        raise ValidationFailure("q-short must be a positive integer")
    return build_cover(build_root_datum(spec), args.n, q_short)


def cmd_datum(args) -> tuple[dict, list[list]]:
    cover = _cover_from_args(args)
    center = center_group(cover)
    heart = heart_center_group(cover)
    payload = {
        "schema": SCHEMA,
        "command": "datum",
        "type": cover.base.spec.letter,
        "rank": cover.base.spec.rank,
        "n": cover.n,
        "q_short": cover.q_short,
        "n_alpha": {f"s{i + 1}": na for i, na in enumerate(cover.n_alpha)},
        "y_qn_basis": [list(row) for row in cover.lattice.basis_rows],
        "center_invariant_factors": list(center.invariant_factors),
        "heart_invariant_factors": list(heart.invariant_factors),
        "oasitic": is_oasitic(cover) if cover.q_short == 1 else None,
        "oasitic_condition": oasitic_condition_text(cover.base.spec),
    }
    rows = [["key", "value"]] + [[k, json.dumps(v, sort_keys=True)]
                                 for k, v in sorted(payload.items())]
    return payload, rows


def cmd_whittaker(args) -> tuple[dict, list[list]]:
    cover = _cover_from_args(args)
    if not is_oasitic(cover):
        raise ValidationFailure(
            f"{cover.name} is not oasitic; this computation requires "
            f"{oasitic_condition_text(cover.base.spec)}"
        )
    try:
        reports = whittaker_reports(cover)
    except WeylOrderCapExceeded as exc:
        raise ComputeFailure(str(exc)) from exc
    payload = {
        "schema": SCHEMA,
        "command": "whittaker",
        "cover": cover.name,
        "rows": [
            {
                "character": rep.character_label,
                "brute_force": rep.brute_force_dimension,
                "closed_form": rep.closed_form_dimension,
                "agreement": rep.agreement,
            }
            for rep in reports
        ],
    }
    rows = [["character", "brute_force", "closed_form", "agreement"]]
    rows += [[r.character_label, r.brute_force_dimension, r.closed_form_dimension,
              r.agreement] for r in reports]
    return payload, rows


def _find_character(cover, label):
    for chi in one_dimensional_characters(cover):
        if chi.label == label:
            return chi
    known = ", ".join(sorted({c.label for c in one_dimensional_characters(cover)}))
    raise ValidationFailure(f"unknown character {label!r}; available: {known}")


def cmd_formal_degree(args) -> tuple[dict, list[list]]:
    cover = _cover_from_args(args)
    q = _parse_fraction(args.q)
    if q <= 1:
        raise ValidationFailure("q must be a rational greater than 1")
    if args.L is None or args.L < 0:
        raise ValidationFailure("a nonnegative truncation --L is required")
    tol = _parse_fraction(args.tol)
    chi = _find_character(cover, args.sigma)

    try:
        if chi.is_discrete_series:
            series = formal_degree_inverse(cover, chi, q, args.L, tol)
        else:
            series = character_series(cover, chi, q, args.L, tol)
    except (DivergentSeriesError, NotOasiticError) as exc:
        raise ComputeFailure(str(exc)) from exc

    datum = cover.base
    constant = canonical_measure_constant(datum, q)
    payload = {
        "schema": SCHEMA,
        "command": "formal-degree",
        "cover": cover.name,
        "character": chi.label,
        "q": _rational(q),
        "truncation": series.truncation,
        "contributions": [_rational(c) for c in series.contributions],
        "partial_sums": [_rational(s) for s in series.partial_sums],
        "tail_ratio": _rational(series.tail_ratio) if series.tail_ratio is not None else None,
        "converged": series.converged,
        "diverging": series.diverging,
        "tolerance": _rational(series.tolerance),
        "canonical_constant": _rational(constant),
    }
    if series.converged:
        payload["degree_inverse"] = _rational(series.limit_estimate)
        payload["degree"] = _rational(1 / series.limit_estimate)
        payload["degree_canonical"] = _rational(degree_with_canonical_measure(series, constant))
    rows = [["length", "contribution", "partial_sum"]]
    for l, (c, s) in enumerate(zip(series.contributions, series.partial_sums)):
        rows.append([l, f"{c.numerator}/{c.denominator}", f"{s.numerator}/{s.denominator}"])
    if not series.converged and chi.is_discrete_series:
        raise ComputeFailure(
            f"series not converged at truncation {series.truncation} "
            f"(tail ratio {series.tail_ratio})",
            payload=payload,
        )
    if series.diverging or not chi.is_discrete_series:
        raise ComputeFailure(
            f"character {chi.label!r} gives a divergent series "
            f"(tail ratio {series.tail_ratio})",
            payload=payload,
        )
    return payload, rows


def cmd_lengths(args) -> tuple[dict, list[list]]:
    cover = _cover_from_args(args)
    if args.L is None or args.L < 0:
        raise ValidationFailure("a nonnegative ball radius --L is required")
    records = sorted(
        enumerate_ball(cover, args.L, args.which),
        key=lambda rec: (rec.length_rescaled, rec.length_base,
                         rec.element.translation, rec.element.matrix),
    )
    gens = None
    rows = [["translation", "finite_part", "word", "len_base", "len_rescaled"]]
    entries = []
    for rec in records:
        from .affine_weyl import generator_set

        if gens is None:
            source = cover if args.which == "rescaled" else build_cover(cover.base, 1, 1)
            gens = generator_set(source)
        word = ".".join(gens.labels[i] for i in rec.word) or "e"
        entry = {
            "translation": list(rec.element.translation),
            "finite_part": [list(r) for r in rec.element.matrix],
            "word": word,
            "len_base": rec.length_base,
            "len_rescaled": rec.length_rescaled,
        }
        entries.append(entry)
        rows.append([" ".join(map(str, rec.element.translation)),
                     json.dumps(entry["finite_part"]), word,
                     rec.length_base, rec.length_rescaled])
    payload = {
        "schema": SCHEMA,
        "command": "lengths",
        "cover": cover.name,
        "which": args.which,
        "radius": args.L,
        "rows": entries,
    }
    return payload, rows


def cmd_poincare(args) -> tuple[dict, list[list]]:
    cover = _cover_from_args(args)
    if args.L is None or args.L < 0:
        raise ValidationFailure("a nonnegative ball radius --L is required")
    counts_rescaled = [0] * (args.L + 1)
    for rec in enumerate_ball(cover, args.L, "rescaled"):
        counts_rescaled[rec.length_rescaled] += 1
    counts_base = [0] * (args.L + 1)
    for rec in enumerate_ball(cover, args.L, "base"):
        counts_base[rec.length_base] += 1
    payload = {
        "schema": SCHEMA,
        "command": "poincare",
        "cover": cover.name,
        "radius": args.L,
        "counts_rescaled": counts_rescaled,
        "counts_base": counts_base,
    }
    rows = [["length", "count_rescaled", "count_base"]]
    rows += [[l, counts_rescaled[l], counts_base[l]] for l in range(args.L + 1)]
    return payload, rows


def _emit(args, payload, rows) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip()
                 for row in rows]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hecke-covers",
        description="Exact computations for covers: dual lattices, lengths, "
                    "degree series, Whittaker dimensions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_q_short=True):
        p.add_argument("--type", required=True, choices=list("ABCDEFG"),
                       help="Cartan letter")
        p.add_argument("--rank", required=True, type=int)
        p.add_argument("--n", required=True, type=int, help="cover degree")
        if need_q_short:
            p.add_argument("--q-short", dest="q_short", type=int, default=1,
                           help="form value on short coroots (default 1)")
        p.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("datum", help="dual lattice, rescalings, center groups")
    common(p)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("whittaker", help="Whittaker dimensions, brute force vs closed form")
    common(p, need_q_short=False)
    p.set_defaults(func=cmd_whittaker, q_short=1)

    p = sub.add_parser("formal-degree", help="degree series of a one-dimensional character")
    common(p, need_q_short=False)
    p.add_argument("--sigma", required=True,
                   help="character label: steinberg, sigma1, ..., trivial, or q:<nodes>")
    p.add_argument("--q", required=True, help="rational q > 1, e.g. 4 or 7/2")
    p.add_argument("--L", required=True, type=int, help="truncation length")
    p.add_argument("--tol", default="1/100000000", help="convergence tolerance")
    p.set_defaults(func=cmd_formal_degree, q_short=1)

    p = sub.add_parser("lengths", help="elements of a ball with both lengths")
    common(p)
    p.add_argument("--L", required=True, type=int, help="ball radius")
    p.add_argument("--which", choices=["rescaled", "base"], default="rescaled")
    p.set_defaults(func=cmd_lengths)

    p = sub.add_parser("poincare", help="graded element counts under both lengths")
    common(p)
    p.add_argument("--L", required=True, type=int, help="ball radius")
    p.set_defaults(func=cmd_poincare)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, rows = args.func(args)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NotOasiticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except WeylOrderCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ComputeFailure as exc:
        if exc.payload is not None:
            _emit(args, exc.payload, [["error"], [str(exc)]])
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(args, payload, rows)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
