"""Command-line front end.

Subcommands load a code (builtin, packaged document, or JSON file), run one
analysis, and print the result as a plain table, CSV, or a single JSON
document with a schema_version field.  Every number is exact: entropies are
rationals in dits (log base p), with an equal bits column when p = 2.
Identical invocations print identical bytes; nothing here is randomized.

Exit codes: 0 success, 2 validation or analysis failure, 3 non-convergence,
4 parse error (arguments, code documents, malformed names).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from . import __version__
from .boundary import (
    BoundaryError,
    HalfPlaneContext,
    bgo_report,
    half_plane_group_generators,
)
from .codes import CodeSpec, CodeValidationError, resolve_code, validate
from .entropy import (
    BufferPolicy,
    ConvergenceError,
    EntropyValue,
    entropy_region,
    levin_wen_gamma,
    scan_cylinder,
    stee,
)
from .groebner import TermOrderError, buchberger, check_degree_bound, leading_term
from .lattice import (
    Geometry,
    GeometryError,
    Region,
    concave_partition,
    rectangular_partition,
)
from .laurent import LaurentPoly
from .pauli import PauliVector

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3
EXIT_PARSE = 4

Cell = Union[str, int, bool]


class CliParseError(ValueError):
    """Bad arguments or unreadable inputs; maps to exit code 4."""


@dataclass
class RunResult:
    command: str
    scalars: list[tuple[str, Union[Cell, list[str]]]]
    columns: tuple[str, ...] = ()
    rows: list[tuple[Cell, ...]] = field(default_factory=list)
    exit_code: int = EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit 2; we reserve 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_PARSE)


# ---------------------------------------------------------------------------
# argument parsing helpers


def _parse_policy(text: str) -> BufferPolicy:
    if text == "auto":
        return BufferPolicy()
    if text == "strict":
        return BufferPolicy(mode="strict")
    try:
        beta = int(text)
    except ValueError:
        raise CliParseError(
            f"--buffer must be 'auto', 'strict', or an integer, got {text!r}"
        ) from None
    if beta < 1:
        raise CliParseError("fixed buffer must be positive")
    return BufferPolicy(mode="fixed", beta=beta)


def _parse_region(text: str) -> Region:
    parts = text.split(",")
    if len(parts) != 4:
        raise CliParseError("--region takes x_lo,x_hi,y_lo,y_hi (half-open box)")
    try:
        x_lo, x_hi, y_lo, y_hi = (int(s) for s in parts)
    except ValueError:
        raise CliParseError(f"non-integer in region {text!r}") from None
    if x_hi <= x_lo or y_hi <= y_lo:
        raise CliParseError("region box is empty")
    return Region.from_box(x_lo, x_hi, y_lo, y_hi)


def _frac(f: Fraction) -> str:
    return str(f)


def _entropy_cells(v: EntropyValue) -> list[tuple[str, str]]:
    cells = [("dits", _frac(v.value))]
    if v.base == 2:
        cells.append(("bits", _frac(v.value)))
    return cells


# ---------------------------------------------------------------------------
# output


def _emit_table(res: RunResult) -> str:
    out: list[str] = []
    for key, val in res.scalars:
        if isinstance(val, list):
            out.append(f"{key}:")
            out.extend(f"  {item}" for item in val)
        else:
            out.append(f"{key}: {val}")
    if res.rows:
        if res.scalars:
            out.append("")
        cells = [tuple(str(c) for c in row) for row in res.rows]
        widths = [
            max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
            for i, h in enumerate(res.columns)
        ]
        out.append("  ".join(h.ljust(w) for h, w in zip(res.columns, widths)).rstrip())
        for r in cells:
            out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def _emit_csv(res: RunResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(res.columns if res.columns else ("key", "value"))
    if res.columns:
        for row in res.rows:
            writer.writerow(row)
    else:
        for key, val in res.scalars:
            writer.writerow((key, "; ".join(val) if isinstance(val, list) else val))
    return buf.getvalue()


def _emit_json(res: RunResult) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": res.command,
        "scalars": {k: v for k, v in res.scalars},
        "columns": list(res.columns),
        "rows": [list(r) for r in res.rows],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


_EMITTERS: dict[str, Callable[[RunResult], str]] = {
    "table": _emit_table,
    "csv": _emit_csv,
    "json": _emit_json,
}


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args, code: CodeSpec) -> RunResult:
    report = validate(code)
    scalars: list[tuple[str, Union[Cell, list[str]]]] = [
        ("code", code.name),
        ("p", code.p),
        ("qudits_per_site", code.q),
        ("generators", code.num_generators),
        ("footprint", report.footprint),
        ("commuting", report.ok),
    ]
    if report.details:
        scalars.append(("details", list(report.details)))
    rows = [(i, str(g)) for i, g in enumerate(code.generators)]
    return RunResult(
        command="validate",
        scalars=scalars,
        columns=("generator", "operator"),
        rows=rows,
        exit_code=EXIT_OK if report.ok else EXIT_VALIDATION,
    )


def _region_entropy(
    code: CodeSpec, region: Region, policy: BufferPolicy
) -> tuple[EntropyValue, int]:
    xs = [n for n, _ in region.sites]
    ys = [m for _, m in region.sites]
    x_lo, x_hi, y_lo, y_hi = min(xs), max(xs), min(ys), max(ys)

    def at(beta: int) -> EntropyValue:
        geom = Geometry.plane(x_hi - x_lo + 1 + 2 * beta, y_hi - y_lo + 1 + 2 * beta)
        return entropy_region(
            code, geom, region.translate(beta - x_lo, beta - y_lo), beta
        )

    beta = policy.start(code)
    val = at(beta)
    if policy.mode in ("fixed", "strict"):
        return val, beta
    for _ in range(policy.max_doublings):
        nxt = at(2 * beta)
        if nxt == val:
            return nxt, 2 * beta
        val, beta = nxt, 2 * beta
    raise ConvergenceError(f"region entropy did not stabilize by buffer {beta}")


def _cmd_entropy(args, code: CodeSpec) -> RunResult:
    region = _parse_region(args.region)
    policy = _parse_policy(args.buffer)
    value, beta = _region_entropy(code, region, policy)
    scalars: list[tuple[str, Union[Cell, list[str]]]] = [
        ("code", code.name),
        ("region", args.region),
        ("sites", len(region)),
        ("buffer", beta),
    ]
    scalars += [("entropy_" + k, v) for k, v in _entropy_cells(value)]
    return RunResult(command="entropy", scalars=scalars)


def _converge_gamma(
    code: CodeSpec, make, policy: BufferPolicy, max_growth: int = 4
) -> tuple[EntropyValue, int]:
    length = max(2, code.footprint())
    prev = levin_wen_gamma(code, make(length), policy)
    for _ in range(max_growth):
        cur = levin_wen_gamma(code, make(length + 1), policy)
        if cur == prev:
            return cur, length + 1
        prev = cur
        length += 1
    raise ConvergenceError(f"gamma did not stabilize in L for {code.name}")


def _cmd_tee(args, code: CodeSpec) -> RunResult:
    policy = _parse_policy(args.buffer)
    makers = {"rect": rectangular_partition, "concave": concave_partition}
    rows: list[tuple[Cell, ...]] = []
    p2 = code.p == 2
    columns = ("partition", "L", "gamma_dits") + (("gamma_bits",) if p2 else ())
    scalars: list[tuple[str, Union[Cell, list[str]]]] = [("code", code.name)]
    if args.partition == "both":
        if args.L is not None:
            delta, g_rect, g_concave, used = stee(code, L=args.L, policy=policy)
        else:
            delta, g_rect, g_concave, used = stee(code, policy=policy)
        for name, val in (("rect", g_rect), ("concave", g_concave)):
            rows.append((name, used, *(c for _, c in _entropy_cells(val))))
        scalars += [("stee_" + k, v) for k, v in _entropy_cells(delta)]
    else:
        make = makers[args.partition]
        if args.L is not None:
            val, used = levin_wen_gamma(code, make(args.L), policy), args.L
        else:
            val, used = _converge_gamma(code, make, policy)
        rows.append((args.partition, used, *(c for _, c in _entropy_cells(val))))
    return RunResult(command="tee", scalars=scalars, columns=columns, rows=rows)


def _cmd_scan_cylinder(args, code: CodeSpec) -> RunResult:
    if args.l_min < 1 or args.l_max < args.l_min:
        raise CliParseError("need 1 <= l-min <= l-max")
    table = scan_cylinder(code, args.l_min, args.l_max, torus_x=args.torus_x)
    p2 = code.p == 2
    columns = ("circumference", "entropy_dits") + (
        ("entropy_bits",) if p2 else ()
    ) + ("logical_qudits",)
    rows: list[tuple[Cell, ...]] = []
    for l, s, k in table:
        rows.append((l, *(c for _, c in _entropy_cells(s)), k))
    scalars: list[tuple[str, Union[Cell, list[str]]]] = [("code", code.name)]
    if args.torus_x is not None:
        scalars.append(("torus_x", args.torus_x))
    return RunResult(command="scan-cylinder", scalars=scalars, columns=columns, rows=rows)


def _cmd_boundary(args, code: CodeSpec) -> RunResult:
    sides = ("upper", "lower") if args.side == "both" else (args.side,)
    scalars: list[tuple[str, Union[Cell, list[str]]]] = [("code", code.name)]
    columns = (
        "side",
        "secondary_types",
        "probe_height",
        "strip_width",
        "window_height",
        "gauge_dimension",
        "primary_dimension",
    )
    rows: list[tuple[Cell, ...]] = []
    total = 0
    for side in sides:
        ctx = HalfPlaneContext(code, side=side)
        family = half_plane_group_generators(ctx)
        scalars.append((f"bulk_family_{side}", [str(g) for g in family]))
        report = bgo_report(ctx, probe_height=args.probe_height)
        total += report.dimension
        rows.append(
            (
                side,
                report.dimension,
                report.probe_height,
                report.width,
                report.window_height,
                report.gauge_dimension,
                report.primary_dimension,
            )
        )
        if report.representatives:
            scalars.append(
                (f"secondary_reps_{side}", [str(r) for r in report.representatives])
            )
    exit_code = EXIT_OK
    if args.side == "both":
        delta, _, _, _ = stee(code, policy=_parse_policy(args.buffer))
        expected = delta.value * 2
        scalars.append(("secondary_total", total))
        scalars.append(("twice_stee", _frac(expected)))
        ok = Fraction(total) == expected
        scalars.append(("secondary_matches_twice_stee", ok))
        if not ok:
            exit_code = EXIT_VALIDATION
    return RunResult(
        command="boundary",
        scalars=scalars,
        columns=columns,
        rows=rows,
        exit_code=exit_code,
    )


def _cmd_groebner(args, code: CodeSpec) -> RunResult:
    from .boundary import half_plane_order, interleaved_positions
    from .groebner import TermOrder

    if args.natural_positions:
        order = TermOrder(poly_order=args.order, module_style=args.style)
    else:
        order = TermOrder(
            poly_order=args.order,
            module_style=args.style,
            position_order=interleaved_positions(code.q),
        )
    gens = [g.comps for g in code.generators]
    basis = buchberger(gens, order, max_degree=args.max_degree)
    input_degree = max(
        (
            mono.xexp + mono.yexp
            for g in code.generators
            for comp in g.comps
            for mono, _ in comp.terms
        ),
        default=0,
    )
    bound = check_degree_bound(basis, input_degree, ncomps=2 * code.q)
    rows: list[tuple[Cell, ...]] = []
    for i, elem in enumerate(basis.elements):
        lead = leading_term(elem, order)
        rows.append(
            (
                i,
                str(PauliVector(p=code.p, q=code.q, comps=tuple(elem))),
                lead.component,
                str(LaurentPoly.monomial(code.p, lead.monomial.xexp, lead.monomial.yexp, lead.coeff)),
            )
        )
    scalars: list[tuple[str, Union[Cell, list[str]]]] = [
        ("code", code.name),
        ("order", f"{order.poly_order}/{order.module_style}"),
        ("elements", len(basis.elements)),
        ("max_total_degree", basis.max_total_degree),
        ("degree_bound", _frac(bound.bound)),
        ("within_degree_bound", bound.within),
    ]
    return RunResult(
        command="groebner",
        scalars=scalars,
        columns=("index", "element", "lead_component", "lead_term"),
        rows=rows,
    )


# ---------------------------------------------------------------------------
# driver


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="stabtee",
        description="Exact entanglement and boundary analysis for 2D "
        "translation-invariant stabilizer codes.",
    )
    parser.add_argument("--version", action="version", version=f"stabtee {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument(
            "--code",
            required=True,
            help="builtin:NAME, a packaged document name, or a JSON file path",
        )
        sp.add_argument(
            "--format",
            choices=("table", "csv", "json"),
            default="table",
            help="output rendering (default: table)",
        )

    sp = sub.add_parser("validate", help="check generator commutation")
    common(sp)
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("entropy", help="exact entropy of a finite region")
    common(sp)
    sp.add_argument("--region", required=True, help="x_lo,x_hi,y_lo,y_hi half-open box")
    sp.add_argument("--buffer", default="auto", help="auto | strict | integer beta")
    sp.set_defaults(func=_cmd_entropy)

    sp = sub.add_parser("tee", help="Levin-Wen topological entanglement entropy")
    common(sp)
    sp.add_argument("--partition", choices=("rect", "concave", "both"), default="both")
    sp.add_argument("--L", type=int, default=None, help="partition scale (default: converge)")
    sp.add_argument("--buffer", default="auto", help="auto | strict | integer beta")
    sp.set_defaults(func=_cmd_tee)

    sp = sub.add_parser("scan-cylinder", help="entropy and logical count per circumference")
    common(sp)
    sp.add_argument("--l-min", type=int, required=True)
    sp.add_argument("--l-max", type=int, required=True)
    sp.add_argument("--torus-x", type=int, default=None, help="fixed x period for the logical count")
    sp.set_defaults(func=_cmd_scan_cylinder)

    sp = sub.add_parser("boundary", help="half-plane bulk basis and boundary gauge report")
    common(sp)
    sp.add_argument("--side", choices=("upper", "lower", "both"), default="both")
    sp.add_argument("--probe-height", type=int, default=None)
    sp.add_argument("--buffer", default="auto", help="policy for the cross-check TEE run")
    sp.set_defaults(func=_cmd_boundary)

    sp = sub.add_parser("groebner", help="reduced module basis of the generator span")
    common(sp)
    sp.add_argument(
        "--order",
        choices=("lex-xy", "lex-yx", "grlex", "ymax-first", "ymin-first"),
        default="ymax-first",
    )
    sp.add_argument("--style", choices=("TOP", "POT"), default="TOP")
    sp.add_argument(
        "--natural-positions",
        action="store_true",
        help="tie-break by raw component index instead of interleaving X/Z blocks",
    )
    sp.add_argument("--max-degree", type=int, default=None)
    sp.set_defaults(func=_cmd_groebner)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        code = resolve_code(args.code, on_noncommuting="ignore")
    except (CodeValidationError, CliParseError, KeyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE

    if args.subcommand != "validate":
        report = validate(code)
        if not report.ok:
            sys.stderr.write(
                "error: code fails commutation checks: " + "; ".join(report.details) + "\n"
            )
            return EXIT_VALIDATION

    try:
        result = args.func(args, code)
    except CliParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ConvergenceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONVERGENCE
    except (BoundaryError, TermOrderError, CodeValidationError, GeometryError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION

    sys.stdout.write(_EMITTERS[args.format](result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
