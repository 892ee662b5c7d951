"""Exact polyhedral toolkit for tropical skeleta, canonical measures and rank bookkeeping.

All arithmetic is over ``fractions.Fraction``; no floating point is used.
"""

from .errors import PolytropError
from .rational import ValueGroup, rat
from .geometry import (
    AffineMap,
    Halfspace,
    Hyperplane,
    Polytope,
    apply_affine,
    faces,
    intersect,
    is_gamma_rational,
    normalized_volume,
    polytope_from_halfspaces,
    polytope_from_vertices,
    rational_relint_point,
    relint_contains,
)
from .periodic import (
    Lattice,
    PeriodicComplex,
    QuotientComplex,
    QuotientPoint,
    common_refinement,
    locate,
    product_complex,
    quotient,
    refine,
    validate_periodic,
)
from .tropical_maps import (
    ExponentMap,
    PiecewiseAffineMap,
    TropicalHom,
    alpha_map,
    eval_faff,
    image_faff,
    induced_quotient_map,
    is_injective_on,
    product_hom,
    rank_faff,
)
from .skeleton import (
    CanonicalSimplex,
    Incidence,
    NondegEntry,
    SkeletonModel,
    Stratum,
    face_chart,
    nondegenerate_set,
    standard_simplex,
    subdivide_skeleton,
    validate_skeleton,
    vertex_stratum_table,
)
from .measure import (
    PolytopalMeasure,
    TropSubvariety,
    assemble_canonical,
    combine,
    delta,
    make_subdivisional,
    product_measure,
    pushforward_exact,
    pushforward_support,
    strict_supports,
)
from .bogomolov import (
    PlaceTropData,
    Verdict,
    find_contradiction,
    is_tropically_trivial,
    simple_degenerate_inference,
    validate_nondeg_consistency,
)
from .ranks import (
    AbelianProfile,
    DualGraph,
    IsogenyDecomposition,
    abelian_rank,
    check_exact_sequence,
    check_isogeny_invariant,
    conjecture_status,
    curve_status,
    is_nowhere_degenerate,
    jacobian_torus_rank,
    max_nowhere_degenerate_profile,
    ndr,
    product_profile,
)

__all__ = [
    "AffineMap",
    "Halfspace",
    "Hyperplane",
    "Polytope",
    "apply_affine",
    "faces",
    "intersect",
    "is_gamma_rational",
    "normalized_volume",
    "polytope_from_halfspaces",
    "polytope_from_vertices",
    "rational_relint_point",
    "relint_contains",
    "Lattice",
    "PeriodicComplex",
    "QuotientComplex",
    "QuotientPoint",
    "common_refinement",
    "locate",
    "product_complex",
    "quotient",
    "refine",
    "validate_periodic",
    "ExponentMap",
    "PiecewiseAffineMap",
    "TropicalHom",
    "alpha_map",
    "eval_faff",
    "image_faff",
    "induced_quotient_map",
    "is_injective_on",
    "product_hom",
    "rank_faff",
    "CanonicalSimplex",
    "Incidence",
    "NondegEntry",
    "SkeletonModel",
    "Stratum",
    "face_chart",
    "nondegenerate_set",
    "standard_simplex",
    "subdivide_skeleton",
    "validate_skeleton",
    "vertex_stratum_table",
    "PolytopalMeasure",
    "TropSubvariety",
    "assemble_canonical",
    "combine",
    "delta",
    "make_subdivisional",
    "product_measure",
    "pushforward_exact",
    "pushforward_support",
    "strict_supports",
    "PlaceTropData",
    "Verdict",
    "find_contradiction",
    "is_tropically_trivial",
    "simple_degenerate_inference",
    "validate_nondeg_consistency",
    "AbelianProfile",
    "DualGraph",
    "IsogenyDecomposition",
    "abelian_rank",
    "check_exact_sequence",
    "check_isogeny_invariant",
    "conjecture_status",
    "curve_status",
    "is_nowhere_degenerate",
    "jacobian_torus_rank",
    "max_nowhere_degenerate_profile",
    "ndr",
    "product_profile",
    "PolytropError",
    "ValueGroup",
    "rat",
]

__version__ = "0.1.0"
