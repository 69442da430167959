"""Global sections of line bundles on towers, and finite-difference tables.

h^0 is computed by pushing the bundle down one P^1-bundle level at a
time: writing the top coordinate as b_d, the pushforward splits into the
twists by 0, -1, ..., -b_d times the twisting class of the last level,
so

    h^0(level d, (b_1, ..., b_d))
        = sum_{i=0}^{b_d} h^0(level d-1, (b_1, ..., b_{d-1}) - i * L_{d-1})

with h^0(P^1, b) = b + 1 for b >= 0.  A negative top coordinate always
gives zero; when every matrix entry is nonnegative, a negative
coordinate in ANY position gives zero (the subtracted twists can never
make it nonnegative again), which is used as a pruning rule.

The finite-difference table extracts top self-intersection numbers from
the growth of h^0(mD): for a free class with eventually polynomial
section counts the d-th forward differences stabilize at D^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .chow import DivisorClass, TowerSpec, intersection_number

__all__ = [
    "DifferenceTable",
    "NonIntegralClassError",
    "delta_genus",
    "difference_table",
    "h0",
    "h0_vanishing_precheck",
    "top_intersection_oracle",
]


class NonIntegralClassError(ValueError):
    """h^0 was asked for a class with a fractional coordinate."""


@lru_cache(maxsize=None)
def _h0_rec(rows: tuple[tuple[int, ...], ...], coords: tuple[int, ...], prune: bool) -> int:
    if prune and any(b < 0 for b in coords):
        return 0
    level = len(coords)
    if level == 1:
        b = coords[0]
        return b + 1 if b >= 0 else 0
    top = coords[-1]
    if top < 0:
        return 0
    row = rows[level - 2]
    below = coords[:-1]
    total = 0
    for i in range(top + 1):
        shifted = tuple(b - i * c for b, c in zip(below, row))
        total += _h0_rec(rows, shifted, prune)
    return total


def h0(tower: TowerSpec, divisor: DivisorClass) -> int:
    """Number of independent global sections of an integral divisor class."""
    if len(divisor) != tower.dim:
        raise ValueError(
            f"class of length {len(divisor)} does not live on a dim-{tower.dim} tower"
        )
    if not divisor.is_integral():
        raise NonIntegralClassError(f"h0 needs an integral class, got {divisor!r}")
    coords = divisor.integral_coefficients()
    return _h0_rec(tower.rows, coords, tower.has_nonnegative_entries())


def h0_vanishing_precheck(tower: TowerSpec, divisor: DivisorClass) -> bool:
    """True iff some coordinate is negative, which forces h^0 = 0.

    Only valid on towers whose matrix entries are all nonnegative (the
    example towers in particular); refuses to answer otherwise.
    """
    if not tower.has_nonnegative_entries():
        raise ValueError("vanishing precheck needs a tower with nonnegative entries")
    if not divisor.is_integral():
        raise NonIntegralClassError(f"precheck needs an integral class, got {divisor!r}")
    return any(c < 0 for c in divisor.coeffs)


def delta_genus(tower: TowerSpec, divisor: DivisorClass) -> int:
    """Fujita's Delta genus D^d + d - h^0(D) of an integral class."""
    top = intersection_number(tower, [divisor] * tower.dim)
    value = top + tower.dim - h0(tower, divisor)
    if value.denominator != 1:
        raise ValueError(f"Delta genus of an integral class must be an integer, got {value}")
    return int(value)


@dataclass(frozen=True)
class DifferenceTable:
    """Samples of a counting function and its iterated forward differences.

    ``differences[j-1]`` is the j-th difference row (length samples - j);
    ``stabilized`` records whether the order-d row is constant, in which
    case ``leading`` holds that constant.
    """

    samples: tuple[tuple[int, int], ...]
    differences: tuple[tuple[int, ...], ...]
    stabilized: bool
    leading: int | None


def difference_table(samples: Sequence[tuple[int, int]], order: int) -> DifferenceTable:
    """Build the forward-difference table of the given order."""
    if len(samples) < order + 2:
        raise ValueError(
            f"need at least {order + 2} samples for order {order}, got {len(samples)}"
        )
    rows: list[tuple[int, ...]] = []
    current = [value for _, value in samples]
    for _ in range(order):
        current = [b - a for a, b in zip(current, current[1:])]
        rows.append(tuple(current))
    last = rows[-1] if order else tuple(current)
    stabilized = len(last) >= 2 and len(set(last)) == 1
    leading = last[0] if stabilized else None
    return DifferenceTable(
        samples=tuple((m, v) for m, v in samples),
        differences=tuple(rows),
        stabilized=stabilized,
        leading=leading,
    )


def top_intersection_oracle(
    tower: TowerSpec,
    divisor: DivisorClass,
    m_start: int = 1,
    window: int | None = None,
) -> DifferenceTable:
    """Sample h^0(mD) for m = m_start .. m_start + window and difference it.

    For a certified-free class the d-th differences stabilize at the top
    self-intersection D^d.  Non-stabilization is reported in the table,
    not raised; callers retry with a larger m_start when low multiples
    are still polluted by higher cohomology.
    """
    d = tower.dim
    if window is None:
        window = d + 2
    if window < d + 2:
        raise ValueError(f"window must be at least dim + 2 = {d + 2}, got {window}")
    samples = []
    for m in range(m_start, m_start + window + 1):
        samples.append((m, h0(tower, m * divisor)))
    return difference_table(samples, d)
