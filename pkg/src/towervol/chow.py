"""Exact intersection theory on iterated P^1-bundles over P^1.

A *tower* is encoded by a lower-triangular integer matrix (c_{i,j}),
1 <= j <= i <= d-1.  Level 1 is P^1; level i+1 is the projectivization
P(O + L_i^{-1}) over level i, where the *twisting class* L_i has
coordinates (c_{i,1}, ..., c_{i,i}) in the basis of distinguished
section classes Sigma_1, ..., Sigma_i.  The Picard group of the top
level is free of rank d on the Sigma classes, so divisor classes are
rational coordinate vectors.

The distinguished section at level k restricts on itself to minus the
twisting class below it, which gives the rewrite rules

    Sigma_1^2 = 0,      Sigma_k^2 = -Sigma_k . L_{k-1}   (k >= 2).

They reduce every monomial in the Sigma classes to a square-free normal
form; degree-d square-free monomials are evaluated with the
normalization Sigma_1 . Sigma_2 ... Sigma_d = 1 (the iterated
distinguished sections cut out a point over P^1; this reproduces
L_2 . Sigma_1 = 1 on the Hirzebruch surface F_e).  All arithmetic is
exact, via fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "ArityError",
    "CycleExpression",
    "DivisorClass",
    "FreenessCertificate",
    "MalformedTowerError",
    "TowerSpec",
    "canonical_class",
    "expand_ladder_combination",
    "freeness_certificate",
    "intersection_number",
    "ladder_class",
    "reduce_monomial",
    "tower_from_matrix",
    "twisting_class",
]

CERTIFIED = "certified"
UNKNOWN = "unknown"


class MalformedTowerError(ValueError):
    """The building matrix is not lower triangular of the right shape."""


class ArityError(ValueError):
    """An intersection product received the wrong number of factors."""


@dataclass(frozen=True)
class TowerSpec:
    """A tower of P^1-bundles, given by the rows of its building matrix.

    ``rows[i-1]`` holds (c_{i,1}, ..., c_{i,i}); an empty tuple of rows
    is P^1 itself.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for i, row in enumerate(self.rows, start=1):
            if len(row) != i:
                raise MalformedTowerError(
                    f"row {i} must have {i} entries, found {len(row)}"
                )

    @property
    def dim(self) -> int:
        return len(self.rows) + 1

    def has_nonnegative_entries(self) -> bool:
        return all(c >= 0 for row in self.rows for c in row)


class DivisorClass:
    """A rational divisor class in Sigma coordinates (b_1, ..., b_d)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int | str]):
        self.coeffs: tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def zero(cls, dim: int) -> "DivisorClass":
        return cls([0] * dim)

    @classmethod
    def sigma(cls, dim: int, i: int) -> "DivisorClass":
        """The class of the level-i distinguished section (1-based)."""
        if not 1 <= i <= dim:
            raise IndexError(f"Sigma index {i} out of range 1..{dim}")
        return cls([1 if j == i else 0 for j in range(1, dim + 1)])

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]

    def __eq__(self, other) -> bool:
        return isinstance(other, DivisorClass) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _check_len(self, other: "DivisorClass") -> None:
        if len(self) != len(other):
            raise ValueError("divisor classes live on towers of different dimension")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_len(other)
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_len(other)
        return DivisorClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-a for a in self.coeffs)

    def __mul__(self, scalar) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(s * a for a in self.coeffs)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integral_coefficients(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"class {self.coeffs} is not integral")
        return tuple(int(c) for c in self.coeffs)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"DivisorClass([{body}])"


class CycleExpression:
    """A linear combination of square-free monomials in the Sigma classes.

    Terms map strictly increasing index tuples to rational coefficients;
    the zero expression has no terms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[int, ...], Fraction] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for indices, coeff in (terms or {}).items():
            key = tuple(indices)
            if list(key) != sorted(set(key)):
                raise ValueError(f"term {key} is not a strictly increasing index set")
            c = Fraction(coeff)
            if c:
                clean[key] = c
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def coefficient(self, indices: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(sorted(indices)), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleExpression) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "CycleExpression(0)"
        parts = [f"{coeff}*S{list(ix)}" for ix, coeff in sorted(self._terms.items())]
        return "CycleExpression(" + " + ".join(parts) + ")"


def tower_from_matrix(rows: Sequence[Sequence[int]]) -> TowerSpec:
    """Validate a lower-triangular matrix and return the tower it builds.

    The tower has dimension len(rows) + 1; no rows gives P^1.
    """
    converted = []
    for i, row in enumerate(rows, start=1):
        entries = tuple(int(c) for c in row)
        if len(entries) != i:
            raise MalformedTowerError(
                f"row {i} must have {i} entries, found {len(entries)}"
            )
        converted.append(entries)
    return TowerSpec(rows=tuple(converted))


def twisting_class(tower: TowerSpec, i: int) -> DivisorClass:
    """The class L_i used to build level i+1, padded to the tower dimension."""
    if not 1 <= i <= tower.dim - 1:
        raise IndexError(f"twisting class index {i} out of range 1..{tower.dim - 1}")
    row = tower.rows[i - 1]
    return DivisorClass(list(row) + [0] * (tower.dim - i))


def ladder_class(tower: TowerSpec, i: int) -> DivisorClass:
    """The i-th ladder class: Sigma_1 for i = 1, else Sigma_i + L_{i-1}.

    On the example towers these are the classes (e, 1, ..., 1) resp.
    (2e, 2, ..., 2, 1, ..., 1) whose nonnegative combinations are free;
    they form a unitriangular basis of the Picard group for any tower.
    """
    if not 1 <= i <= tower.dim:
        raise IndexError(f"ladder index {i} out of range 1..{tower.dim}")
    if i == 1:
        return DivisorClass.sigma(tower.dim, 1)
    row = tower.rows[i - 2]
    coeffs = [Fraction(c) for c in row] + [Fraction(0)] * (tower.dim - (i - 1))
    coeffs[i - 1] += 1
    return DivisorClass(coeffs)


def canonical_class(tower: TowerSpec) -> DivisorClass:
    """The canonical class K; its j-th coordinate is -(2 + sum_{i>=j} c_{i,j})."""
    d = tower.dim
    coords = []
    for j in range(1, d + 1):
        total = 2 + sum(tower.rows[i - 1][j - 1] for i in range(j, d))
        coords.append(-total)
    return DivisorClass(coords)


def _reduce_exponents(
    tower: TowerSpec, exponents: Sequence[int], coeff: Fraction
) -> dict[tuple[int, ...], Fraction]:
    """Rewrite an exponent vector to square-free normal form.

    Always substitutes at the highest repeated index; since the twisting
    class at level k-1 only involves indices below k, the reverse
    lexicographic exponent vector strictly decreases and the loop
    terminates.
    """
    d = tower.dim
    pending: dict[tuple[int, ...], Fraction] = {tuple(exponents): coeff}
    done: dict[tuple[int, ...], Fraction] = {}
    while pending:
        exps, c = pending.popitem()
        k = 0
        for idx in range(d, 0, -1):
            if exps[idx - 1] >= 2:
                k = idx
                break
        if k == 0:
            key = tuple(i + 1 for i, e in enumerate(exps) if e == 1)
            done[key] = done.get(key, Fraction(0)) + c
            continue
        if k == 1:
            continue  # Sigma_1^2 = 0
        row = tower.rows[k - 2]
        for j, cj in enumerate(row, start=1):
            if not cj:
                continue
            new = list(exps)
            new[k - 1] -= 1
            new[j - 1] += 1
            key = tuple(new)
            acc = pending.get(key, Fraction(0)) - c * cj
            if acc:
                pending[key] = acc
            elif key in pending:
                del pending[key]
    return {key: c for key, c in done.items() if c}


def reduce_monomial(
    tower: TowerSpec,
    indices: Iterable[int],
    coeff: Fraction | int = 1,
) -> CycleExpression:
    """Reduce a monomial (a multiset of Sigma indices) to normal form."""
    exps = [0] * tower.dim
    for i in indices:
        if not 1 <= i <= tower.dim:
            raise IndexError(f"Sigma index {i} out of range 1..{tower.dim}")
        exps[i - 1] += 1
    return CycleExpression(_reduce_exponents(tower, exps, Fraction(coeff)))


def _multiply_by_class(
    tower: TowerSpec,
    expr: dict[tuple[int, ...], Fraction],
    divisor: DivisorClass,
) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for indices, coeff in expr.items():
        for i, b in enumerate(divisor.coeffs, start=1):
            if not b:
                continue
            c = coeff * b
            if i not in indices:
                key = tuple(sorted(indices + (i,)))
                acc = out.get(key, Fraction(0)) + c
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
                continue
            exps = [0] * tower.dim
            for idx in indices:
                exps[idx - 1] += 1
            exps[i - 1] += 1
            for key, cc in _reduce_exponents(tower, exps, c).items():
                acc = out.get(key, Fraction(0)) + cc
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return out


def intersection_number(
    tower: TowerSpec, classes: Sequence[DivisorClass]
) -> Fraction:
    """The intersection number of exactly dim divisor classes.

    Multilinear expansion into Sigma monomials, reduction to normal
    form, and evaluation of the point class Sigma_1 ... Sigma_d = 1.
    """
    d = tower.dim
    if len(classes) != d:
        raise ArityError(f"need exactly {d} classes, got {len(classes)}")
    for cl in classes:
        if len(cl) != d:
            raise ArityError(
                f"class of length {len(cl)} does not live on a dim-{d} tower"
            )
    expr: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    for cl in classes:
        expr = _multiply_by_class(tower, expr, cl)
        if not expr:
            return Fraction(0)
    return expr.get(tuple(range(1, d + 1)), Fraction(0))


@dataclass(frozen=True)
class FreenessCertificate:
    """One-sided freeness evidence for a divisor class.

    ``certified`` means the class is a nonnegative rational combination
    alpha * Sigma_1 + sum_{i>=2} beta_i * (ladder class i); re-expanding
    the stored (alpha, beta_2, ..., beta_d) reproduces the class exactly.
    ``unknown`` is not a verdict of non-freeness.
    """

    status: str
    decomposition: tuple[Fraction, ...] | None = None


def expand_ladder_combination(
    tower: TowerSpec, coefficients: Sequence[Fraction | int]
) -> DivisorClass:
    """Expand (alpha, beta_2, ..., beta_d) back into Sigma coordinates."""
    d = tower.dim
    if len(coefficients) != d:
        raise ArityError(f"need {d} coefficients, got {len(coefficients)}")
    total = DivisorClass.zero(d)
    for i, c in enumerate(coefficients, start=1):
        if c:
            total = total + Fraction(c) * ladder_class(tower, i)
    return total


def freeness_certificate(
    tower: TowerSpec, divisor: DivisorClass
) -> FreenessCertificate:
    """Solve the triangular change of basis from the ladder classes.

    The ladder basis is unitriangular, so the decomposition always
    exists and is unique; the certificate is granted iff every solved
    coefficient is nonnegative.
    """
    d = tower.dim
    if len(divisor) != d:
        raise ArityError(
            f"class of length {len(divisor)} does not live on a dim-{d} tower"
        )
    remainder = list(divisor.coeffs)
    solved = [Fraction(0)] * d
    for i in range(d, 1, -1):
        beta = remainder[i - 1]
        solved[i - 1] = beta
        if beta:
            for j, c in enumerate(ladder_class(tower, i).coeffs):
                remainder[j] -= beta * c
    solved[0] = remainder[0]
    if all(c >= 0 for c in solved):
        return FreenessCertificate(status=CERTIFIED, decomposition=tuple(solved))
    return FreenessCertificate(status=UNKNOWN, decomposition=None)
