"""The two double-cover families over example towers, and their invariants.

Family A (k = 0): the base tower Y_n is built from rows (e), (e,1), ...,
(e,1,...,1); one more level with twisting class 2*(e,1,...,1) gives W,
and the cover of W branches along a member of |2B| containing the top
distinguished section.  Family B (k >= 1) extends W by k further levels
whose twisting classes are (2e,2,...,2,1,...,1).

On the cover X, sections of m*K_X split as
    h^0(m*K_X) = h^0(m*N) + h^0(m*N - B)
for the classes N = K_W + B on the tower, so every plurigenus is an
exact lattice count.  The canonical volume has the closed form

    Vol = 2 * H^d = (n+k+2)*e / 2^k - (n+k+1) / 2^(k-1),

where H = N - (1/2) * (sum of the top section classes), and satisfies
the slope identity Vol = a * p_g - b with

    a = (n+k+2) / (2^k (n+1)),
    b = (n^2 + 2n + 2 + (n+2)k) / (2^k (n+1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import (
    CERTIFIED,
    DivisorClass,
    TowerSpec,
    canonical_class,
    expand_ladder_combination,
    freeness_certificate,
    intersection_number,
    ladder_class,
    tower_from_matrix,
)
from .cohomology import DifferenceTable, delta_genus, difference_table, h0

__all__ = [
    "ConsistencyError",
    "CoverParameterError",
    "CoverSpec",
    "InvariantReport",
    "PlurigenusVolumeTable",
    "closed_form_geometric_genus",
    "closed_form_volume",
    "cover_spec",
    "example_tower_W",
    "example_tower_Y",
    "geometric_genus",
    "h0_even_parity_check",
    "nested_sum_h0",
    "non_nef_witness",
    "plurigenus",
    "slope_coefficients",
    "slope_limit_table",
    "slope_report",
    "volume_closed_form",
    "volume_via_plurigenera",
]


class CoverParameterError(ValueError):
    """Parameters out of the range the construction supports."""


class ConsistencyError(RuntimeError):
    """A closed form disagreed with its independent recomputation."""


def example_tower_Y(n: int, e: int) -> TowerSpec:
    """The dim-n base tower: row i is (e, 1, ..., 1)."""
    if n < 2:
        raise CoverParameterError(f"base tower needs n >= 2, got n={n}")
    if e < 1:
        raise CoverParameterError(f"base tower needs e >= 1, got e={e}")
    rows = [[e] + [1] * (i - 1) for i in range(1, n)]
    return tower_from_matrix(rows)


def example_tower_W(n: int, e: int, k: int = 0) -> TowerSpec:
    """The dim-(n+k+1) cover tower.

    Rows 1..n-1 are the base rows, row n is (2e, 2, ..., 2), and row
    n+l (1 <= l <= k) is (2e, 2, ..., 2, 1, ..., 1) with l ones.
    """
    if n < 2:
        raise CoverParameterError(f"cover tower needs n >= 2, got n={n}")
    if e < 1:
        raise CoverParameterError(f"cover tower needs e >= 1, got e={e}")
    if k < 0:
        raise CoverParameterError(f"cover tower needs k >= 0, got k={k}")
    rows = [[e] + [1] * (i - 1) for i in range(1, n)]
    rows.append([2 * e] + [2] * (n - 1))
    for l in range(1, k + 1):
        rows.append([2 * e] + [2] * (n - 1) + [1] * l)
    return tower_from_matrix(rows)


def _branch_half_class(n: int, e: int, k: int) -> DivisorClass:
    coords = [(n + 2 * k + 3) * e]
    coords += [2 * k + n + 5 - j for j in range(2, n + 1)]
    coords += [k + 3]
    coords += [k + 3 - l for l in range(1, k + 1)]
    return DivisorClass(coords)


def _branch_moving_class(n: int, e: int, k: int) -> DivisorClass:
    coords = [(2 * n + 4 * k + 6) * e]
    coords += [2 * (n + 2 * k + 5 - j) for j in range(2, n + 1)]
    coords += [2 * k + 5]
    coords += [2 * (k - l) + 6 for l in range(1, k)]
    if k >= 1:
        coords += [5]
    return DivisorClass(coords)


@dataclass(frozen=True)
class CoverSpec:
    """A double cover of the tower W_k, encoded by its branch data.

    B is half the branch class, N = K + B pushes the canonical class of
    the cover down to the tower, T is the moving part of the branch
    (2B = T + Sigma_{n+1} + Sigma_{n+1+k}, the last summand only for
    k >= 1), and H = N - (1/2) sum of the top section classes carries
    the volume: Vol = 2 * H^dim.
    """

    n: int
    e: int
    k: int
    tower: TowerSpec
    B: DivisorClass
    N: DivisorClass
    T: DivisorClass
    H: DivisorClass
    sigma_top: tuple[DivisorClass, ...]

    @property
    def dim(self) -> int:
        return self.tower.dim


def cover_spec(n: int, e: int, k: int = 0) -> CoverSpec:
    """Build the family-A (k = 0) or family-B (k >= 1) cover data."""
    if e < 2:
        raise CoverParameterError(f"the double cover needs e >= 2, got e={e}")
    tower = example_tower_W(n, e, k)
    d = tower.dim
    B = _branch_half_class(n, e, k)
    T = _branch_moving_class(n, e, k)
    N = DivisorClass([2 * e - 2] + [1] * (d - 1))
    sigma_top = tuple(DivisorClass.sigma(d, n + 1 + j) for j in range(k + 1))
    half = Fraction(1, 2)
    H = N
    for s in sigma_top:
        H = H - half * s

    branch_sections = sigma_top[0] if k == 0 else sigma_top[0] + sigma_top[-1]
    if 2 * B != T + branch_sections:
        raise ConsistencyError(f"2B != T + sections for (n={n}, e={e}, k={k})")
    if N != canonical_class(tower) + B:
        raise ConsistencyError(f"N != K + B for (n={n}, e={e}, k={k})")
    if 2 * H != (2 * e - 4) * DivisorClass.sigma(d, 1) + ladder_class(tower, d):
        raise ConsistencyError(f"2H != (2e-4)Sigma_1 + L_top for (n={n}, e={e}, k={k})")
    return CoverSpec(n=n, e=e, k=k, tower=tower, B=B, N=N, T=T, H=H, sigma_top=sigma_top)


def plurigenus(cover: CoverSpec, m: int) -> int:
    """h^0(m * K) on the cover: h^0(m*N) + h^0(m*N - B) on the tower."""
    if m < 1:
        raise CoverParameterError(f"plurigenus needs m >= 1, got m={m}")
    t = cover.tower
    return h0(t, m * cover.N) + h0(t, m * cover.N - cover.B)


def closed_form_geometric_genus(n: int, e: int) -> int:
    return (n + 1) * e - n


def geometric_genus(cover: CoverSpec) -> int:
    """p_g of the cover, cross-checked against the descent to the base tower."""
    value = plurigenus(cover, 1)
    base = example_tower_Y(cover.n, cover.e)
    n_base = DivisorClass([2 * cover.e - 2] + [1] * (cover.n - 1))
    descended = h0(base, n_base)
    if h0(cover.tower, cover.N) != descended:
        raise ConsistencyError(
            f"h0 of N does not descend to the base tower for "
            f"(n={cover.n}, e={cover.e}, k={cover.k})"
        )
    if value != closed_form_geometric_genus(cover.n, cover.e):
        raise ConsistencyError(
            f"p_g disagrees with closed form for (n={cover.n}, e={cover.e}, k={cover.k})"
        )
    return value


def closed_form_volume(n: int, e: int, k: int) -> Fraction:
    return Fraction((n + k + 2) * e - 2 * (n + k + 1), 2**k)


def volume_closed_form(cover: CoverSpec) -> Fraction:
    """The canonical volume 2 * H^dim, checked against its closed form."""
    d = cover.dim
    value = 2 * intersection_number(cover.tower, [cover.H] * d)
    expected = closed_form_volume(cover.n, cover.e, cover.k)
    if value != expected:
        raise ConsistencyError(
            f"2*H^{d} = {value} but closed form gives {expected} for "
            f"(n={cover.n}, e={cover.e}, k={cover.k})"
        )
    return value


@dataclass(frozen=True)
class PlurigenusVolumeTable:
    """A difference table of even plurigenera and the volume it implies."""

    table: DifferenceTable
    implied_volume: Fraction | None


def volume_via_plurigenera(cover: CoverSpec, t_max: int) -> PlurigenusVolumeTable:
    """Sample P_{2t} for t = 1..t_max; d-th differences give Vol * 2^d."""
    d = cover.dim
    if t_max < d + 2:
        raise CoverParameterError(f"t_max must be at least dim + 2 = {d + 2}, got {t_max}")
    samples = [(t, plurigenus(cover, 2 * t)) for t in range(1, t_max + 1)]
    table = difference_table(samples, d)
    implied = Fraction(table.leading, 2**d) if table.stabilized else None
    return PlurigenusVolumeTable(table=table, implied_volume=implied)


def h0_even_parity_check(cover: CoverSpec, m: int) -> bool:
    """Whether h^0(m*N) = h^0(m*H) for an even multiple m."""
    if m % 2 != 0:
        raise CoverParameterError(f"parity check needs even m, got m={m}")
    t = cover.tower
    return h0(t, m * cover.N) == h0(t, m * cover.H)


def _bounded_tuples(k: int, bound: int):
    """All (i_k, ..., i_1) with nonnegative entries and sum <= bound."""
    if k == 0:
        yield ()
        return
    for head in range(bound + 1):
        for tail in _bounded_tuples(k - 1, bound - head):
            yield (head,) + tail


def nested_sum_h0(cover: CoverSpec, m: int, use_half: bool) -> int:
    """Unrolled pushforward of m*N down to the base tower, as a lattice sum.

    With bound m the sum reproduces h^0(m*N) exactly; with bound m/2
    (even m only) every discarded term vanishes, so the value is
    unchanged and equals h^0(m*H).
    """
    if cover.k < 1:
        raise CoverParameterError("the nested sum needs k >= 1")
    if m < 1:
        raise CoverParameterError(f"nested sum needs m >= 1, got m={m}")
    if use_half and m % 2 != 0:
        raise CoverParameterError(f"half bounds need even m, got m={m}")
    bound = m // 2 if use_half else m
    n, e = cover.n, cover.e
    base = example_tower_Y(n, e)
    n_base = DivisorClass([2 * e - 2] + [1] * (n - 1))
    l_base = ladder_class(base, n)
    total = 0
    for combo in _bounded_tuples(cover.k, bound):
        s = sum(combo)
        for l0 in range(s, bound + 1):
            total += h0(base, m * n_base - (2 * l0) * l_base)
    return total


def non_nef_witness(cover: CoverSpec) -> Fraction:
    """N against the fiber of the base pushed into all top sections.

    The curve class is Sigma_1 ... Sigma_{n-1} . Sigma_{n+1} ... the top;
    a negative value witnesses that the canonical class of the cover is
    not nef.
    """
    if cover.k < 1:
        raise CoverParameterError("the non-nefness witness needs k >= 1")
    d = cover.dim
    factors = [DivisorClass.sigma(d, i) for i in range(1, cover.n)]
    factors += [DivisorClass.sigma(d, i) for i in range(cover.n + 1, d + 1)]
    factors.append(cover.N)
    return intersection_number(cover.tower, factors)


def slope_coefficients(n: int, k: int) -> tuple[Fraction, Fraction]:
    """The (a, b) with Vol = a * p_g - b, valid for k = 0 as well."""
    denom = 2**k * (n + 1)
    a = Fraction(n + k + 2, denom)
    b = Fraction(n * n + 2 * n + 2 + (n + 2) * k, denom)
    return a, b


@dataclass(frozen=True)
class InvariantReport:
    """Everything the verification tables print for one cover."""

    n: int
    e: int
    k: int
    dim_x: int
    p_g: int
    plurigenera: tuple[tuple[int, int], ...]
    volume: Fraction
    slope_a: Fraction
    slope_b: Fraction
    d1: int
    delta_genus_of_Ln: int
    identity_checks: tuple[tuple[str, bool], ...]

    def all_passed(self) -> bool:
        return all(ok for _, ok in self.identity_checks)


def slope_report(cover: CoverSpec, pluri_max: int = 2) -> InvariantReport:
    """Assemble the invariants of one cover and verify every identity.

    d1 is reported as n, certified by the computed equality of section
    counts between the cover tower and the base tower; failed identities
    are recorded in the report, never dropped.
    """
    n, e, k = cover.n, cover.e, cover.k
    t = cover.tower
    d = t.dim
    checks: list[tuple[str, bool]] = []

    branch_sections = cover.sigma_top[0]
    if k >= 1:
        branch_sections = branch_sections + cover.sigma_top[-1]
    checks.append(("2B = T + top sections", 2 * cover.B == cover.T + branch_sections))
    checks.append(("N = K + B", cover.N == canonical_class(t) + cover.B))
    two_h = (2 * e - 4) * DivisorClass.sigma(d, 1) + ladder_class(t, d)
    checks.append(("2H = (2e-4)Sigma_1 + L_top", 2 * cover.H == two_h))
    t_cert = freeness_certificate(t, cover.T)
    t_ok = t_cert.status == CERTIFIED and expand_ladder_combination(
        t, t_cert.decomposition
    ) == cover.T
    checks.append(("T in the free ladder cone", t_ok))

    p_g = plurigenus(cover, 1)
    checks.append(("p_g = (n+1)e - n", p_g == closed_form_geometric_genus(n, e)))

    base = example_tower_Y(n, e)
    n_base = DivisorClass([2 * e - 2] + [1] * (n - 1))
    checks.append(("h0(N) descends to the base tower", h0(t, cover.N) == h0(base, n_base)))

    volume = 2 * intersection_number(t, [cover.H] * d)
    checks.append(("Vol = closed form", volume == closed_form_volume(n, e, k)))

    slope_a, slope_b = slope_coefficients(n, k)
    checks.append(("Vol = a*p_g - b", volume == slope_a * p_g - slope_b))

    plurigenera = tuple((m, plurigenus(cover, m)) for m in range(1, pluri_max + 1))
    delta = delta_genus(base, ladder_class(base, n))

    return InvariantReport(
        n=n,
        e=e,
        k=k,
        dim_x=d,
        p_g=p_g,
        plurigenera=plurigenera,
        volume=volume,
        slope_a=slope_a,
        slope_b=slope_b,
        d1=n,
        delta_genus_of_Ln=delta,
        identity_checks=tuple(checks),
    )


def slope_limit_table(n: int, k_max: int) -> list[tuple[int, Fraction]]:
    """The slope coefficient a(k) = (n+k+2) / (2^k (n+1)) for k = 0..k_max."""
    if k_max < 1:
        raise CoverParameterError(f"slope table needs k_max >= 1, got {k_max}")
    return [(k, slope_coefficients(n, k)[0]) for k in range(k_max + 1)]
