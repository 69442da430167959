"""Command-line front end: deterministic tables over exact rationals.

Subcommands: tower, h0, intersect, example-a, example-b, verify,
slope-table, wps.  Exit codes: 0 on success, 1 when an identity check
fails, 2 on input errors.  Tables render as markdown (default) or TSV
(``--format tsv``); rationals print as p/q, integers without the /1.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import chow, covers, wps
from .chow import ArityError, DivisorClass, MalformedTowerError
from .cohomology import NonIntegralClassError, delta_genus, h0
from .textio import (
    DivisorParseError,
    TowerParseError,
    format_divisor,
    format_rational,
    parse_divisor_literal,
    parse_tower_file,
)

__all__ = ["RunResult", "build_parser", "main", "run"]

DEFAULT_DIM_CAP = 8
DEFAULT_MULTIPLE_CAP = 64
DEFAULT_GRID = "n=2..5,e=2..5,k=0..3"

_INPUT_ERRORS = (
    TowerParseError,
    DivisorParseError,
    MalformedTowerError,
    ArityError,
    NonIntegralClassError,
    covers.CoverParameterError,
    FileNotFoundError,
    IndexError,
    ValueError,
)


@dataclass
class RunResult:
    exit_code: int
    tables: str = ""
    diagnostics: list[tuple[str, str, str]] = field(default_factory=list)
    error: str | None = None


def _render_table(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "tsv":
        lines = ["\t".join(header)]
        lines += ["\t".join(row) for row in rows]
        return "\n".join(lines)
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("| " + " | ".join("---" for _ in header) + " |")
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines)


def _check_dim_cap(dim: int, allow_large: bool) -> None:
    if dim > DEFAULT_DIM_CAP and not allow_large:
        raise ValueError(
            f"tower dimension {dim} exceeds the default cap {DEFAULT_DIM_CAP}; "
            "pass --allow-large to override (section counts grow exponentially)"
        )


def _read_tower(path: str):
    with open(path, encoding="utf-8") as handle:
        return parse_tower_file(handle.read())


def _cmd_tower(args) -> RunResult:
    tower = _read_tower(args.spec)
    d = tower.dim
    _check_dim_cap(d, args.allow_large)
    minus_k = -chow.canonical_class(tower)
    rows = [
        ["dim", str(d)],
        ["-K", format_divisor(minus_k)],
        ["K", format_divisor(chow.canonical_class(tower))],
    ]
    for i in range(1, d):
        rows.append([f"L_{i}", format_divisor(chow.twisting_class(tower, i))])
    top = chow.ladder_class(tower, d)
    rows.append([f"L_{d} (ladder)", format_divisor(top)])
    rows.append([f"Delta genus of L_{d}", str(delta_genus(tower, top))])
    return RunResult(0, _render_table(["quantity", "value"], rows, args.format))


def _cmd_h0(args) -> RunResult:
    tower = _read_tower(args.spec)
    _check_dim_cap(tower.dim, args.allow_large)
    divisor = parse_divisor_literal(args.divisor, tower.dim)
    if args.table:
        if args.multiples < 1:
            raise ValueError(f"--multiples must be >= 1, got {args.multiples}")
        if args.multiples > DEFAULT_MULTIPLE_CAP and not args.allow_large:
            raise ValueError(
                f"--multiples {args.multiples} exceeds the default cap "
                f"{DEFAULT_MULTIPLE_CAP}; pass --allow-large to override"
            )
        lines = ["m\th0"]
        for m in range(1, args.multiples + 1):
            lines.append(f"{m}\t{h0(tower, m * divisor)}")
        return RunResult(0, "\n".join(lines))
    return RunResult(0, str(h0(tower, divisor)))


def _cmd_intersect(args) -> RunResult:
    tower = _read_tower(args.spec)
    literals = [part for part in args.classes.split(";") if part.strip()]
    classes = [parse_divisor_literal(part, tower.dim) for part in literals]
    value = chow.intersection_number(tower, classes)
    return RunResult(0, format_rational(value))


def _report_rows(report: covers.InvariantReport) -> list[list[str]]:
    rows = [
        ["n (base)", str(report.n)],
        ["e", str(report.e)],
        ["k", str(report.k)],
        ["dim X", str(report.dim_x)],
        ["p_g", str(report.p_g)],
    ]
    for m, value in report.plurigenera:
        rows.append([f"P_{m}", str(value)])
    rows += [
        ["Vol", format_rational(report.volume)],
        ["slope a", format_rational(report.slope_a)],
        ["slope b", format_rational(report.slope_b)],
        [
            "slope identity",
            f"Vol = {format_rational(report.slope_a)}*p_g"
            f" - {format_rational(report.slope_b)}",
        ],
        ["d_1", str(report.d1)],
        ["Delta genus of base polarization", str(report.delta_genus_of_Ln)],
    ]
    for name, ok in report.identity_checks:
        rows.append([f"check: {name}", "pass" if ok else "FAIL"])
    return rows


def _cmd_example(args, k: int) -> RunResult:
    spec = covers.cover_spec(args.n, args.e, k)
    report = covers.slope_report(spec, pluri_max=args.pluri)
    table = _render_table(["quantity", "value"], _report_rows(report), args.format)
    diagnostics = [
        (name, "pass", "FAIL") for name, ok in report.identity_checks if not ok
    ]
    return RunResult(1 if diagnostics else 0, table, diagnostics)


def _parse_grid(text: str) -> dict[str, range]:
    ranges: dict[str, range] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, bounds = part.partition("=")
        key = key.strip()
        if key not in ("n", "e", "k"):
            raise ValueError(f"unknown grid variable {key!r} in {text!r}")
        lo, dots, hi = bounds.partition("..")
        try:
            low = int(lo)
            high = int(hi) if dots else low
        except ValueError:
            raise ValueError(f"bad grid bounds {bounds!r} in {text!r}") from None
        if high < low:
            raise ValueError(f"empty grid range {part!r}")
        ranges[key] = range(low, high + 1)
    for key, default in (("n", range(2, 6)), ("e", range(2, 6)), ("k", range(0, 4))):
        ranges.setdefault(key, default)
    return ranges


def _cmd_verify(args) -> RunResult:
    grid = _parse_grid(args.grid)
    diagnostics: list[tuple[str, str, str]] = []
    summary: list[list[str]] = []

    def record(suite: str, name: str, expected, actual) -> int:
        if expected != actual:
            diagnostics.append((f"{suite}: {name}", str(expected), str(actual)))
        return 1

    # Base polarization suite on the dim-n example towers.
    count = 0
    for n in range(2, 7):
        for e in range(1, 6):
            tower = covers.example_tower_Y(n, e)
            ln = chow.ladder_class(tower, n)
            count += record("base", f"L^n (n={n},e={e})",
                            Fraction(e), chow.intersection_number(tower, [ln] * n))
            count += record("base", f"h0(L) (n={n},e={e})", e + n, h0(tower, ln))
            count += record("base", f"Delta (n={n},e={e})", 0, delta_genus(tower, ln))
            for i in range(1, n + 1):
                sigma = DivisorClass.sigma(n, i)
                expected = Fraction(1) if i == 1 else Fraction(0)
                count += record(
                    "base",
                    f"L^(n-1).Sigma_{i} (n={n},e={e})",
                    expected,
                    chow.intersection_number(tower, [ln] * (n - 1) + [sigma]),
                )
    summary.append(["base polarization suite", str(count)])

    # Ladder intersections on the extended towers.
    count = 0
    for n in grid["n"]:
        for e in grid["e"]:
            for l in grid["k"]:
                tower = covers.example_tower_W(n, e, l)
                d = tower.dim
                top = chow.ladder_class(tower, d)
                count += record(
                    "ladder", f"L^d (n={n},e={e},l={l})",
                    Fraction(2**n * e), chow.intersection_number(tower, [top] * d),
                )
                count += record(
                    "ladder", f"L^(d-1).Sigma_1 (n={n},e={e},l={l})",
                    Fraction(2 ** (n - 1)),
                    chow.intersection_number(
                        tower, [top] * (d - 1) + [DivisorClass.sigma(d, 1)]
                    ),
                )
                count += record(
                    "ladder", f"L^(d-1).Sigma_top (n={n},e={e},l={l})",
                    Fraction(0),
                    chow.intersection_number(
                        tower, [top] * (d - 1) + [DivisorClass.sigma(d, d)]
                    ),
                )
    summary.append(["ladder intersection suite", str(count)])

    # Cover suite: identities, parity, nested sums, nefness data.
    count = 0
    for n in grid["n"]:
        for e in grid["e"]:
            if e < 2:
                continue
            for k in grid["k"]:
                spec = covers.cover_spec(n, e, k)
                report = covers.slope_report(spec)
                for name, ok in report.identity_checks:
                    count += record(
                        "cover", f"{name} (n={n},e={e},k={k})", True, ok
                    )
                if spec.dim <= 5:
                    for m in (2, 4, 6, 8):
                        count += record(
                            "cover", f"parity m={m} (n={n},e={e},k={k})",
                            True, covers.h0_even_parity_check(spec, m),
                        )
                if k >= 1:
                    direct = {m: h0(spec.tower, m * spec.N) for m in range(1, 7)}
                    for m in range(1, 7):
                        count += record(
                            "cover", f"nested sum m={m} (n={n},e={e},k={k})",
                            direct[m], covers.nested_sum_h0(spec, m, use_half=False),
                        )
                        if m % 2 == 0:
                            count += record(
                                "cover", f"nested half sum m={m} (n={n},e={e},k={k})",
                                direct[m], covers.nested_sum_h0(spec, m, use_half=True),
                            )
                    count += record(
                        "cover", f"non-nef witness (n={n},e={e},k={k})",
                        True, covers.non_nef_witness(spec) < 0,
                    )
                else:
                    cert = chow.freeness_certificate(spec.tower, 2 * spec.H)
                    count += record(
                        "cover", f"2H certified free (n={n},e={e},k={k})",
                        chow.CERTIFIED, cert.status,
                    )
    summary.append(["cover suite", str(count)])

    # Slope decay at the smallest base dimension in the grid.
    n0 = grid["n"].start
    table = covers.slope_limit_table(n0, 20)
    decay_ok = all(table[k + 1][1] < table[k][1] for k in range(1, 20))
    count = record("slope", f"a(k) strictly decreasing (n={n0})", True, decay_ok)
    summary.append(["slope decay suite", str(count)])

    summary.append(["checks failed", str(len(diagnostics))])
    body = _render_table(["suite", "checks"], summary, args.format)
    if diagnostics:
        detail = _render_table(
            ["failed check", "expected", "actual"],
            [[name, exp, act] for name, exp, act in diagnostics],
            args.format,
        )
        body = body + "\n\n" + detail
    return RunResult(1 if diagnostics else 0, body, diagnostics)


def _cmd_slope_table(args) -> RunResult:
    rows = [
        [str(k), format_rational(a)]
        for k, a in covers.slope_limit_table(args.n, args.kmax)
    ]
    return RunResult(0, _render_table(["k", "slope a"], rows, args.format))


def _cmd_wps(args) -> RunResult:
    weights = tuple(int(w) for w in args.weights.split(","))
    surface = wps.WeightedHypersurface(weights=weights, degree=args.degree)
    report = wps.wh_invariants(surface)
    rows = [
        ["weights", ",".join(str(w) for w in weights)],
        ["degree", str(args.degree)],
        ["dim", str(report.dim)],
        ["adjoint degree", str(report.alpha)],
        ["p_g", str(report.p_g)],
        ["Vol", format_rational(report.volume)],
        ["general type", "yes" if report.general_type else "no (flagged)"],
    ]
    if args.times_curve is not None:
        p_g_z, vol_z = wps.product_with_curve(
            report.p_g, report.volume, report.dim, args.times_curve
        )
        rows += [
            ["genus of curve factor", str(args.times_curve)],
            ["p_g of product", str(p_g_z)],
            ["Vol of product", format_rational(vol_z)],
        ]
    return RunResult(0, _render_table(["quantity", "value"], rows, args.format))


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("markdown", "tsv"), default="markdown",
        help="table output format",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="towervol",
        description="Exact invariants of P^1-bundle towers and their double covers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tower", help="summarize a tower spec file")
    p.add_argument("--spec", required=True, help="path to a tower spec file")
    p.add_argument("--allow-large", action="store_true")
    _add_format(p)
    p.set_defaults(func=_cmd_tower)

    p = sub.add_parser("h0", help="global sections of a divisor class")
    p.add_argument("--spec", required=True)
    p.add_argument("--divisor", required=True,
                   help="divisor literal, e.g. --divisor=4,2,2 (use = for negatives)")
    p.add_argument("--table", action="store_true", help="print a TSV of (m, h0(mD))")
    p.add_argument("--multiples", type=int, default=8)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=_cmd_h0)

    p = sub.add_parser("intersect", help="intersection number of dim classes")
    p.add_argument("--spec", required=True)
    p.add_argument("--classes", required=True,
                   help="semicolon-separated divisor literals, e.g. \"3,1;3,1\"")
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("example-a", help="family-A cover report (k = 0)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--pluri", type=int, default=2, help="report P_m up to this m")
    _add_format(p)
    p.set_defaults(func=lambda args: _cmd_example(args, 0))

    p = sub.add_parser("example-b", help="family-B cover report (k >= 1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pluri", type=int, default=2)
    _add_format(p)
    p.set_defaults(func=lambda args: _cmd_example(args, args.k))

    p = sub.add_parser("verify", help="run the verification grid")
    p.add_argument("--grid", default=DEFAULT_GRID,
                   help=f"e.g. {DEFAULT_GRID!r}")
    _add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("slope-table", help="slope coefficient a(k) for k = 0..kmax")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_slope_table)

    p = sub.add_parser("wps", help="weighted hypersurface invariants")
    p.add_argument("--weights", required=True, help="e.g. 1,3,4,5,14")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--times-curve", type=int, default=None,
                   help="also report the product with a curve of this genus")
    _add_format(p)
    p.set_defaults(func=_cmd_wps)

    return parser


def run(argv: list[str]) -> RunResult:
    """Parse argv and execute; input failures become exit code 2."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        return RunResult(2, error=str(exc))


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        result = run(argv)
    except SystemExit as exc:  # argparse: unknown flags, missing arguments
        code = exc.code
        return code if isinstance(code, int) else 2
    if result.error is not None:
        print(f"error: {result.error}", file=sys.stderr)
        return result.exit_code
    if result.tables:
        print(result.tables)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
