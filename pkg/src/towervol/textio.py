"""Text formats: tower spec files, divisor literals, exact rationals.

Tower files are line oriented UTF-8 with '#' comments:

    dim 3
    row 2
    row 2 1

Divisor literals are comma-separated rationals, ``p`` or ``p/q``,
e.g. ``4,2,2,1/2``.  Rationals render as ``p/q`` and integers without
the ``/1``; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .chow import DivisorClass, TowerSpec, tower_from_matrix

__all__ = [
    "DivisorParseError",
    "TowerParseError",
    "format_divisor",
    "format_rational",
    "parse_divisor_literal",
    "parse_tower_file",
    "render_tower_file",
]


class TowerParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DivisorParseError(ValueError):
    pass


def _column_of(raw: str, token: str) -> int:
    pos = raw.find(token)
    return pos + 1 if pos >= 0 else 1


def parse_tower_file(text: str) -> TowerSpec:
    """Parse a tower spec file, naming line and column on failure."""
    dim: int | None = None
    dim_line = 0
    rows: list[list[int]] = []
    row_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if dim is None:
            if tokens[0] != "dim":
                raise TowerParseError(
                    f"expected 'dim', found {tokens[0]!r}", lineno, _column_of(raw, tokens[0])
                )
            if len(tokens) != 2:
                raise TowerParseError("'dim' takes exactly one integer", lineno)
            try:
                dim = int(tokens[1])
            except ValueError:
                raise TowerParseError(
                    f"non-integer dimension {tokens[1]!r}", lineno, _column_of(raw, tokens[1])
                ) from None
            if dim < 1:
                raise TowerParseError(f"dimension must be >= 1, got {dim}", lineno)
            dim_line = lineno
            continue
        if tokens[0] != "row":
            raise TowerParseError(
                f"expected 'row', found {tokens[0]!r}", lineno, _column_of(raw, tokens[0])
            )
        entries = []
        for tok in tokens[1:]:
            try:
                entries.append(int(tok))
            except ValueError:
                raise TowerParseError(
                    f"non-integer entry {tok!r}", lineno, _column_of(raw, tok)
                ) from None
        expected = len(rows) + 1
        if len(entries) != expected:
            raise TowerParseError(
                f"row {expected} must have {expected} entries, found {len(entries)}",
                lineno,
            )
        rows.append(entries)
        row_lines.append(lineno)
    if dim is None:
        raise TowerParseError("missing 'dim' line", 1)
    if len(rows) != dim - 1:
        raise TowerParseError(
            f"expected {dim - 1} rows for dim {dim}, found {len(rows)}",
            row_lines[-1] if row_lines else dim_line,
        )
    return tower_from_matrix(rows)


def render_tower_file(tower: TowerSpec) -> str:
    lines = [f"dim {tower.dim}"]
    for row in tower.rows:
        lines.append("row " + " ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def format_rational(value: Fraction | int) -> str:
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_divisor_literal(text: str, expected_length: int | None = None) -> DivisorClass:
    """Parse ``p,p/q,...`` into a divisor class."""
    tokens = [t.strip() for t in text.split(",")]
    coeffs = []
    for tok in tokens:
        if not tok:
            raise DivisorParseError(f"empty coordinate in divisor literal {text!r}")
        try:
            coeffs.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise DivisorParseError(
                f"bad rational {tok!r} in divisor literal {text!r}"
            ) from None
    if expected_length is not None and len(coeffs) != expected_length:
        raise DivisorParseError(
            f"divisor has {len(coeffs)} coordinates, tower needs {expected_length}"
        )
    return DivisorClass(coeffs)


def format_divisor(divisor: DivisorClass) -> str:
    return ",".join(format_rational(c) for c in divisor.coeffs)
