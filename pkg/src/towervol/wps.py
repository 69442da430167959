"""Invariants of general quasi-smooth weighted hypersurfaces.

For X of degree delta in a weighted projective space with weights
(w_0, ..., w_N), the adjoint number is alpha = delta - sum(w_i).  For a
general quasi-smooth member the canonical class is O(alpha), so

    p_g = #{monomials of weighted degree alpha},
    Vol = alpha^dim * delta / prod(w_i)   when alpha > 0 (else 0),

with dim = N - 1.  Quasi-smoothness and generality are assumed, not
checked; the report flags whether the member is of general type
(alpha > 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

__all__ = [
    "WeightedHypersurface",
    "WHReport",
    "count_weighted_monomials",
    "product_with_curve",
    "volume_formula",
    "wh_invariants",
]


@dataclass(frozen=True)
class WeightedHypersurface:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self) -> None:
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"weights must be positive, got {self.weights}")
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        if len(self.weights) < 2:
            raise ValueError("need at least two weights")

    @property
    def alpha(self) -> int:
        return self.degree - sum(self.weights)

    @property
    def dim(self) -> int:
        return len(self.weights) - 2


@dataclass(frozen=True)
class WHReport:
    p_g: int
    volume: Fraction
    dim: int
    alpha: int
    general_type: bool


def count_weighted_monomials(weights: tuple[int, ...] | list[int], total: int) -> int:
    """Number of monomials x_0^{a_0} ... x_N^{a_N} with sum a_i w_i = total."""
    if total < 0:
        return 0
    counts = [0] * (total + 1)
    counts[0] = 1
    for w in weights:
        for t in range(w, total + 1):
            counts[t] += counts[t - w]
    return counts[total]


def volume_formula(alpha: int, degree: int, weights: tuple[int, ...]) -> Fraction:
    """alpha^dim * degree / prod(weights); zero when the class is not big."""
    dim = len(weights) - 2
    if alpha <= 0:
        return Fraction(0)
    return Fraction(alpha**dim * degree, prod(weights))


def wh_invariants(surface: WeightedHypersurface) -> WHReport:
    """p_g, volume and dimension of a general quasi-smooth member."""
    alpha = surface.alpha
    return WHReport(
        p_g=count_weighted_monomials(surface.weights, alpha),
        volume=volume_formula(alpha, surface.degree, surface.weights),
        dim=surface.dim,
        alpha=alpha,
        general_type=alpha > 0,
    )


def product_with_curve(
    p_g_x: int, vol_x: Fraction | int, dim_x: int, g: int
) -> tuple[int, Fraction]:
    """Invariants of X x C for a genus-g curve C.

    Vol picks up the factor (dim X + 1) * (2g - 2); p_g multiplies by g
    (one canonical form on the product per pairing of factors' forms).
    """
    if g < 2:
        raise ValueError(f"need a curve of genus >= 2, got g={g}")
    return p_g_x * g, (dim_x + 1) * Fraction(vol_x) * (2 * g - 2)
