"""towervol: exact invariants of P^1-bundle towers and their double covers.

The package computes, in exact rational arithmetic, intersection
numbers and section counts on towers of P^1-bundles over P^1, the
geometric genus / plurigenera / canonical volume of the double-cover
families built over them, and the invariants of general weighted
hypersurfaces, together with independent finite-difference and
lattice-sum oracles for every headline value.
"""

from .chow import (
    CycleExpression,
    DivisorClass,
    FreenessCertificate,
    TowerSpec,
    canonical_class,
    freeness_certificate,
    intersection_number,
    ladder_class,
    reduce_monomial,
    tower_from_matrix,
    twisting_class,
)
from .cohomology import (
    DifferenceTable,
    delta_genus,
    h0,
    h0_vanishing_precheck,
    top_intersection_oracle,
)
from .covers import (
    CoverSpec,
    InvariantReport,
    cover_spec,
    example_tower_W,
    example_tower_Y,
    geometric_genus,
    h0_even_parity_check,
    nested_sum_h0,
    non_nef_witness,
    plurigenus,
    slope_limit_table,
    slope_report,
    volume_closed_form,
    volume_via_plurigenera,
)
from .wps import WeightedHypersurface, product_with_curve, wh_invariants

__version__ = "0.1.0"

__all__ = [
    "CycleExpression",
    "DifferenceTable",
    "DivisorClass",
    "FreenessCertificate",
    "CoverSpec",
    "InvariantReport",
    "TowerSpec",
    "WeightedHypersurface",
    "canonical_class",
    "cover_spec",
    "delta_genus",
    "example_tower_W",
    "example_tower_Y",
    "freeness_certificate",
    "geometric_genus",
    "h0",
    "h0_even_parity_check",
    "h0_vanishing_precheck",
    "intersection_number",
    "ladder_class",
    "nested_sum_h0",
    "non_nef_witness",
    "plurigenus",
    "product_with_curve",
    "reduce_monomial",
    "slope_limit_table",
    "slope_report",
    "top_intersection_oracle",
    "tower_from_matrix",
    "twisting_class",
    "volume_closed_form",
    "volume_via_plurigenera",
    "wh_invariants",
]
