"""Command-line surface.

Commands:
  ekl degree <file>                 EKL degree of a map from a MapSpec JSON file
  ekl quotient --type ...           build a quotient-map family member and run it
  ekl weyl ap --type T --remove N   self-dual coset count a_P
  ekl weyl info --type T            root system summary
  ekl gw classify <file>            classify a Gram matrix from JSON

Exit codes: 0 success, 1 internal error, 2 parse error, 3 map not
supported at the origin, 4 degenerate form or vanishing socle element.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .degree import (
    EKLResult,
    MapSpec,
    NotSupportedAtOriginError,
    ZeroSocleError,
    ekl_degree,
)
from .gw import (
    DegenerateFormError,
    GramForm,
    GWClass,
    classify,
    gw_equal,
    recognize_units,
    render_class,
    render_diagonal,
    units_class,
)
from .localg import InfiniteQuotientError, UnitIdealError
from .poly import ParseError
from .quotmap import (
    QuotientSpec,
    build_D_full,
    build_D_odd_partial,
    build_Sn_full,
    build_typeA_partial,
    build_typeBC_full,
    expected_gw,
)
from .scalar import QQ, GF, PrimeField
from .weyl import (
    EnumerationBudgetError,
    ParabolicSpec,
    build_root_system,
    compute_aP,
    is_central_longest,
    longest_element,
    parabolic_order_formula,
    parabolic_type_name,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_NOT_SUPPORTED = 3
EXIT_DEGENERATE = 4


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _parse_field(text: str):
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        return GF(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<prime>'")


# ---------------------------------------------------------------------------
# reports

def _class_invariants(c: GWClass) -> dict:
    if isinstance(c.field, PrimeField):
        return {
            "field": f"fp:{c.field.p}",
            "rank": str(c.rank),
            "discriminant_is_square": "true" if c.disc_legendre == 1 else "false",
        }
    data = {
        "field": "q",
        "rank": str(c.rank),
        "signature": str(c.signature),
        "discriminant": str(c.discriminant),
        "hasse": {str(v): str(s) for v, s in (c.hasse or ())},
    }
    return data


def _named_form(c: GWClass) -> str | None:
    if isinstance(c.field, PrimeField):
        return None
    shape = recognize_units(c)
    if shape is None:
        return None
    return render_class(c)


def _degree_report(spec: MapSpec, result: EKLResult, elapsed: float) -> dict:
    qp = result.quotient
    report = {
        "input": {
            "variables": list(spec.ring),
            "components": [str(f) for f in spec.components],
        },
        "dimension": str(qp.dimension),
        "standard_monomials": [
            _mono_name(m, qp.ring) for m in qp.standard_monomials
        ],
        "socle_coordinates": [str(c) for c in result.socle.coordinates],
        "socle": str(result.socle),
        "jacobian_coordinates": [str(c) for c in result.jacobian.coordinates],
        "jacobian": str(result.jacobian),
        "diagonal": [str(d) for d in result.gw_class.diagonal],
        "invariants": _class_invariants(result.gw_class),
        "named_form": _named_form(result.gw_class),
        "timing_seconds": f"{elapsed:.3f}",
    }
    return report


def _mono_name(mono, ring) -> str:
    if sum(mono) == 0:
        return "1"
    parts = []
    for name, e in zip(ring, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _print_degree_report(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
        return
    if fmt == "named":
        named = report["named_form"]
        if named is not None:
            print(named)
        else:
            print("⟨" + ",".join(report["diagonal"]) + "⟩")
        return
    if fmt == "diag":
        print("⟨" + ",".join(report["diagonal"]) + "⟩")
        return
    if fmt == "invariants":
        inv = report["invariants"]
        print(f"rank {inv['rank']}")
        if "signature" in inv:
            print(f"signature {inv['signature']}")
            print(f"discriminant {inv['discriminant']}")
            hasse = inv.get("hasse", {})
            if hasse:
                line = ", ".join(f"({v}) -> {s}" for v, s in sorted(hasse.items()))
            else:
                line = "trivial at every place"
            print(f"hasse {line}")
        else:
            print(f"discriminant square: {inv['discriminant_is_square']}")
        return
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_degree(args) -> int:
    try:
        field = _parse_field(args.field)
    except ValueError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    try:
        with open(args.mapfile, "r", encoding="utf-8") as handle:
            spec = MapSpec.from_json(handle.read(), field)
    except (OSError, json.JSONDecodeError, KeyError, ParseError, ValueError) as exc:
        return _fail(EXIT_PARSE, f"parse error: {exc}")
    started = time.perf_counter()
    try:
        result = ekl_degree(spec, threads=args.threads)
    except NotSupportedAtOriginError as exc:
        return _fail(EXIT_NOT_SUPPORTED, f"not supported at origin: {exc}")
    except InfiniteQuotientError as exc:
        return _fail(EXIT_NOT_SUPPORTED, f"not supported at origin: {exc}")
    except UnitIdealError as exc:
        return _fail(EXIT_NOT_SUPPORTED, f"empty fiber: {exc}")
    except (ZeroSocleError, DegenerateFormError) as exc:
        return _fail(EXIT_DEGENERATE, f"degenerate form: {exc}")
    elapsed = time.perf_counter() - started
    _print_degree_report(_degree_report(spec, result, elapsed), args.format)
    return EXIT_OK


def _build_quotient_spec(args) -> QuotientSpec:
    field = _parse_field(args.field)
    if args.type == "A":
        if not args.blocks:
            raise ValueError("--type A requires --blocks")
        blocks = [int(b) for b in args.blocks.split(",")]
        return build_typeA_partial(blocks, field)
    if args.type == "Sn":
        if args.n is None:
            raise ValueError("--type Sn requires --n")
        return build_Sn_full(args.n, field)
    if args.type in ("B", "C"):
        if args.rank is None:
            raise ValueError(f"--type {args.type} requires --rank")
        return build_typeBC_full(args.rank, field)
    if args.type == "D":
        if args.rank is None:
            raise ValueError("--type D requires --rank")
        if args.parabolic is None:
            return build_D_full(args.rank, field)
        expected = f"D{args.rank - 1}"
        if args.parabolic.upper() != expected or args.rank % 2 == 0 or args.rank < 5:
            raise ValueError(
                f"the supported partial family is odd rank r over --parabolic D(r-1), r >= 5"
            )
        return build_D_odd_partial((args.rank - 1) // 2, field)
    raise ValueError(f"unknown quotient type {args.type!r}")


def cmd_quotient(args) -> int:
    try:
        spec = _build_quotient_spec(args)
    except ValueError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    if args.emit_map:
        comment = f"family={spec.family} parameters={','.join(map(str, spec.parameters))}"
        with open(args.emit_map, "w", encoding="utf-8") as handle:
            handle.write(spec.map.to_json(comment=comment))
        print(f"wrote {args.emit_map}", file=sys.stderr)
    started = time.perf_counter()
    try:
        result = ekl_degree(spec.map, threads=args.threads)
    except (ZeroSocleError, DegenerateFormError) as exc:
        return _fail(EXIT_DEGENERATE, f"degenerate form: {exc}")
    except (NotSupportedAtOriginError, InfiniteQuotientError) as exc:
        return _fail(EXIT_NOT_SUPPORTED, f"not supported at origin: {exc}")
    elapsed = time.perf_counter() - started

    shape = expected_gw(spec)
    computed = result.gw_class
    print(f"family: {spec.describe()}")
    print(f"expected degree: {spec.expected_degree}")
    print(f"quotient dimension: {result.dimension}")
    verdict = "MISMATCH"
    alpha_note = ""
    if isinstance(computed.field, PrimeField):
        predicted_text = f"rank {shape.rank} nondegenerate over {computed.field!r}"
        if computed.rank == shape.rank:
            verdict = "MATCH"
    elif shape.residual_count == 0:
        predicted = units_class(shape.ones, shape.minus_ones, (), computed.field)
        predicted_text = render_class(predicted)
        if gw_equal(predicted, computed):
            verdict = "MATCH"
    else:
        predicted_text = (
            f"{shape.ones}<1> + {shape.minus_ones}<-1> + "
            f"{shape.residual_count}<alpha> for a single square class alpha"
        )
        units = recognize_units(computed)
        if units is not None:
            residual = units.residual
            if len(residual) == shape.residual_count and units.ones == shape.ones:
                alpha_note = f"alpha = {residual[0].rep}"
                verdict = "MATCH"
            elif not residual:
                # an alpha of square class 1 is absorbed into the unit count
                if (
                    units.ones == shape.ones + shape.residual_count
                    and units.minus_ones == shape.minus_ones
                ):
                    alpha_note = "alpha = 1"
                    verdict = "MATCH"
    print(f"computed: {render_class(computed)}")
    print(f"predicted: {predicted_text}")
    if alpha_note:
        print(alpha_note)
    print(f"verdict: {verdict}")
    print(f"timing_seconds: {elapsed:.3f}")
    return EXIT_OK if verdict == "MATCH" else EXIT_INTERNAL


def _parse_nodes(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_type(text: str) -> tuple[str, int]:
    label = text[0].upper()
    rank = int(text[1:])
    return label, rank


def cmd_weyl_ap(args) -> int:
    try:
        label, rank = _parse_type(args.type)
        rs = build_root_system(label, rank)
    except (ValueError, IndexError) as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    if args.keep:
        spec = ParabolicSpec.keep(_parse_nodes(args.keep))
    else:
        spec = ParabolicSpec.remove(rs, _parse_nodes(args.remove))
    try:
        spec.validate(rs)
        if not spec.is_proper(rs):
            raise ValueError("the parabolic must be proper")
    except ValueError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")

    shortcut = is_central_longest(rs) and args.method in ("auto", "shortcut")
    order = rs.order
    sub_order = parabolic_order_formula(rs, spec)
    print(f"group: {label}{rank}, order {order}")
    print(
        f"parabolic: keep {sorted(spec.kept_nodes)} ({parabolic_type_name(rs, spec)}), "
        f"order {sub_order}"
    )
    print(f"cosets: {order // sub_order}")
    try:
        if shortcut:
            value = compute_aP(rs, spec, method="auto")
        else:
            value = compute_aP(rs, spec, method="enumerate", threads=args.threads)
    except EnumerationBudgetError as exc:
        return _fail(EXIT_INTERNAL, f"budget exceeded: {exc}")
    print(f"a_P: {value}")
    print(f"shortcut: {'central longest word, no enumeration' if shortcut else 'not used'}")
    return EXIT_OK


def cmd_weyl_info(args) -> int:
    try:
        label, rank = _parse_type(args.type)
        rs = build_root_system(label, rank)
    except (ValueError, IndexError) as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    w0 = longest_element(rs)
    print(f"type: {label}{rank}")
    print(f"order: {rs.order}")
    print(f"positive roots: {rs.npos}")
    print(f"longest word length: {w0.length}")
    print(f"longest word central: {'yes' if is_central_longest(rs) else 'no'}")
    return EXIT_OK


def cmd_gw_classify(args) -> int:
    try:
        field = _parse_field(args.field)
        with open(args.gramfile, "r", encoding="utf-8") as handle:
            rows = json.loads(handle.read())
        gram = GramForm.from_rows(rows, field)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail(EXIT_PARSE, f"parse error: {exc}")
    try:
        cls = classify(gram, field)
    except DegenerateFormError as exc:
        return _fail(EXIT_DEGENERATE, f"degenerate form: {exc}")
    print(f"diagonal: {render_diagonal(cls)}")
    inv = _class_invariants(cls)
    for key, value in inv.items():
        if key == "hasse":
            if value:
                line = ", ".join(f"({v}) -> {s}" for v, s in sorted(value.items()))
            else:
                line = "trivial at every place"
            print(f"hasse: {line}")
        else:
            print(f"{key}: {value}")
    named = _named_form(cls)
    if named is not None:
        print(f"named form: {named}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ekl",
        description="Exact local degrees, quadratic form classification, Weyl coset counts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_degree = sub.add_parser("degree", help="EKL degree of a map at the origin")
    p_degree.add_argument("mapfile")
    p_degree.add_argument("--field", default="q", help="q or fp:<prime>")
    p_degree.add_argument(
        "--format", default="named", choices=["named", "diag", "invariants", "json"]
    )
    p_degree.add_argument("--threads", type=int, default=1)
    p_degree.set_defaults(func=cmd_degree)

    p_quot = sub.add_parser("quotient", help="build and run a quotient-map family member")
    p_quot.add_argument("--type", required=True, choices=["A", "B", "C", "D", "Sn"])
    p_quot.add_argument("--blocks", help="comma-separated block sizes (type A)")
    p_quot.add_argument("--n", type=int, help="number of variables (type Sn)")
    p_quot.add_argument("--rank", type=int, help="rank (types B, C, D)")
    p_quot.add_argument("--parabolic", help="partial quotient subgroup, e.g. D4")
    p_quot.add_argument("--field", default="q")
    p_quot.add_argument("--threads", type=int, default=1)
    p_quot.add_argument("--emit-map", help="also write the MapSpec JSON here")
    p_quot.set_defaults(func=cmd_quotient)

    p_weyl = sub.add_parser("weyl", help="root system and coset computations")
    weyl_sub = p_weyl.add_subparsers(dest="weyl_command", required=True)

    p_ap = weyl_sub.add_parser("ap", help="self-dual coset count a_P")
    p_ap.add_argument("--type", required=True, help="e.g. A3, D5, E6")
    group = p_ap.add_mutually_exclusive_group(required=True)
    group.add_argument("--keep", help="comma-separated kept nodes")
    group.add_argument("--remove", help="comma-separated removed nodes")
    p_ap.add_argument(
        "--method", default="auto", choices=["auto", "enumerate", "shortcut"]
    )
    p_ap.add_argument("--threads", type=int, default=1)
    p_ap.set_defaults(func=cmd_weyl_ap)

    p_info = weyl_sub.add_parser("info", help="root system summary")
    p_info.add_argument("--type", required=True)
    p_info.set_defaults(func=cmd_weyl_info)

    p_gw = sub.add_parser("gw", help="quadratic form utilities")
    gw_sub = p_gw.add_subparsers(dest="gw_command", required=True)
    p_classify = gw_sub.add_parser("classify", help="classify a Gram matrix")
    p_classify.add_argument("gramfile")
    p_classify.add_argument("--field", default="q")
    p_classify.set_defaults(func=cmd_gw_classify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # pragma: no cover - unexpected faults
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
